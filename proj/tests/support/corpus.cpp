/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "support/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mwpaug/parser.hpp"

namespace mwpaug::testing {

namespace {

int irand(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double drand(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

ExprPtr small_const(std::mt19937_64& rng) {
  return make_constant(Rational(irand(rng, 2, 9), 1));
}

/// Arithmetic over givens and small constants; divisors are kept to single
/// positive leaves so every binding in (0, inf) evaluates cleanly.
ExprPtr given_expr(std::mt19937_64& rng, int given_count, int depth) {
  if (depth <= 0 || coin(rng, 0.35)) {
    if (coin(rng, 0.7)) return make_given(irand(rng, 1, given_count));
    return small_const(rng);
  }
  static constexpr BinaryOp kOps[] = {BinaryOp::Add, BinaryOp::Add,
                                      BinaryOp::Sub, BinaryOp::Mul,
                                      BinaryOp::Div};
  const BinaryOp op = kOps[irand(rng, 0, 4)];
  ExprPtr left = given_expr(rng, given_count, depth - 1);
  ExprPtr right;
  if (op == BinaryOp::Div) {
    right = coin(rng, 0.7) ? make_given(irand(rng, 1, given_count))
                           : small_const(rng);
  } else {
    right = given_expr(rng, given_count, depth - 1);
  }
  return make_binary(op, std::move(left), std::move(right));
}

/// Coefficient attached to a lower-triangle unknown.
ExprPtr coef_expr(std::mt19937_64& rng, int given_count) {
  switch (irand(rng, 0, 2)) {
    case 0:
      return make_given(irand(rng, 1, given_count));
    case 1:
      return small_const(rng);
    default:
      return make_binary(BinaryOp::Add, make_given(irand(rng, 1, given_count)),
                         make_given(irand(rng, 1, given_count)));
  }
}

/// Diagonal term for x_i whose coefficient is positive for every positive
/// binding of the givens.
ExprPtr diag_term(std::mt19937_64& rng, int given_count, int i) {
  const ExprPtr x = make_unknown(i);
  switch (irand(rng, 0, 3)) {
    case 0:
      return make_binary(BinaryOp::Mul, make_given(irand(rng, 1, given_count)),
                         x);
    case 1:
      return make_binary(BinaryOp::Mul, x,
                         make_given(irand(rng, 1, given_count)));
    case 2:
      return x;
    default:
      return make_binary(BinaryOp::Div, x,
                         make_given(irand(rng, 1, given_count)));
  }
}

double det(const std::vector<std::vector<double>>& a) {
  const std::size_t m = a.size();
  if (m == 1) return a[0][0];
  if (m == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::vector<double> cramer_solve(const std::vector<std::vector<double>>& a,
                                 const std::vector<double>& b) {
  const std::size_t m = a.size();
  const double d = det(a);
  if (std::abs(d) < 1e-12) throw std::runtime_error("corpus system singular");
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::vector<double>> aj = a;
    for (std::size_t i = 0; i < m; ++i) aj[i][j] = b[i];
    out[j] = det(aj) / d;
  }
  return out;
}

/// Every mutation is a closure producing the rewritten whole-side
/// expression; `rebuild` splices a replacement subtree back into context.
void collect_mutations(const ExprPtr& e,
                       const std::function<ExprPtr(ExprPtr)>& rebuild,
                       std::vector<std::function<ExprPtr()>>& out) {
  const BinaryNode* b = e->binary();
  if (b == nullptr) return;
  const ExprPtr left = b->left;
  const ExprPtr right = b->right;
  const auto flip_to = [&](BinaryOp op) {
    out.push_back([rebuild, op, left, right] {
      return rebuild(make_binary(op, left, right));
    });
  };
  const auto swap_operands = [&](BinaryOp op) {
    out.push_back([rebuild, op, left, right] {
      return rebuild(make_binary(op, right, left));
    });
  };
  const bool right_is_zero =
      right->constant() != nullptr && right->constant()->value.is_zero();
  const bool right_is_one =
      right->constant() != nullptr &&
      std::abs(right->constant()->value.to_double() - 1.0) < 1e-12;
  const bool right_pure_given = max_unknown_index(right) == 0;
  const bool left_pure_given = max_unknown_index(left) == 0;
  switch (b->op) {
    case BinaryOp::Add:
      if (!right_is_zero) flip_to(BinaryOp::Sub);
      break;
    case BinaryOp::Sub:
      if (!right_is_zero) flip_to(BinaryOp::Add);
      if (expr_prefix_string(left) != expr_prefix_string(right))
        swap_operands(BinaryOp::Sub);
      break;
    case BinaryOp::Mul:
      // Keeps the corrupted tree evaluable: never move an unknown into a
      // denominator.
      if (!right_is_one && right_pure_given) flip_to(BinaryOp::Div);
      break;
    case BinaryOp::Div:
      if (!right_is_one) flip_to(BinaryOp::Mul);
      if (left_pure_given &&
          expr_prefix_string(left) != expr_prefix_string(right))
        swap_operands(BinaryOp::Div);
      break;
    case BinaryOp::Pow:
      break;
  }
  collect_mutations(
      left,
      [rebuild, b, right](ExprPtr nl) {
        return rebuild(make_binary(b->op, std::move(nl), right));
      },
      out);
  collect_mutations(
      right,
      [rebuild, b, left](ExprPtr nr) {
        return rebuild(make_binary(b->op, left, std::move(nr)));
      },
      out);
}

void collect_leaves(const ExprPtr& e, std::multiset<std::string>& out) {
  if (const BinaryNode* b = e->binary()) {
    collect_leaves(b->left, out);
    collect_leaves(b->right, out);
    return;
  }
  if (const ConstantNode* c = e->constant()) {
    out.insert(c->value.to_decimal());
  } else if (const GivenNode* g = e->given()) {
    out.insert("n_" + std::to_string(g->index));
  } else {
    out.insert("x_" + std::to_string(e->unknown()->index));
  }
}

void count_unknown_leaves(const ExprPtr& e, std::map<int, int>& counts) {
  if (const BinaryNode* b = e->binary()) {
    count_unknown_leaves(b->left, counts);
    count_unknown_leaves(b->right, counts);
    return;
  }
  if (const UnknownNode* u = e->unknown()) ++counts[u->index];
}

void collect_chain_alt(const ExprPtr& e, BinaryOp op,
                       std::vector<ExprPtr>& out) {
  const BinaryNode* b = e->binary();
  if (b != nullptr && b->op == op) {
    collect_chain_alt(b->left, op, out);
    collect_chain_alt(b->right, op, out);
    return;
  }
  out.push_back(e);
}

ExprPtr refill_chain_alt(const ExprPtr& skel, BinaryOp op,
                         std::vector<ExprPtr>::const_iterator& it) {
  const BinaryNode* b = skel->binary();
  if (b != nullptr && b->op == op) {
    ExprPtr left = refill_chain_alt(b->left, op, it);
    ExprPtr right = refill_chain_alt(b->right, op, it);
    return make_binary(op, std::move(left), std::move(right));
  }
  return *it++;
}

}  // namespace

double eval_ref(const ExprPtr& e, const std::vector<double>& givens,
                const std::vector<double>& unknowns) {
  if (const ConstantNode* c = e->constant()) return c->value.to_double();
  if (const GivenNode* g = e->given()) return givens.at(g->index - 1);
  if (const UnknownNode* u = e->unknown()) return unknowns.at(u->index - 1);
  const BinaryNode* b = e->binary();
  const double l = eval_ref(b->left, givens, unknowns);
  const double r = eval_ref(b->right, givens, unknowns);
  switch (b->op) {
    case BinaryOp::Add:
      return l + r;
    case BinaryOp::Sub:
      return l - r;
    case BinaryOp::Mul:
      return l * r;
    case BinaryOp::Div:
      return l / r;
    case BinaryOp::Pow:
      return std::pow(l, r);
  }
  std::abort();
}

std::vector<LinearSystem> make_linear_corpus(std::uint64_t seed,
                                             std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<LinearSystem> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int m = irand(rng, 1, 3);
    const int g = irand(rng, 1, 5);
    EquationSet set;
    for (int i = 1; i <= m; ++i) {
      ExprPtr lhs = diag_term(rng, g, i);
      for (int j = 1; j < i; ++j) {
        if (!coin(rng, 0.6)) continue;
        ExprPtr coef = coef_expr(rng, g);
        ExprPtr term = coin(rng, 0.5)
                           ? make_binary(BinaryOp::Mul, std::move(coef),
                                         make_unknown(j))
                           : make_binary(BinaryOp::Mul, make_unknown(j),
                                         std::move(coef));
        lhs = make_binary(coin(rng, 0.5) ? BinaryOp::Add : BinaryOp::Sub,
                          std::move(lhs), std::move(term));
      }
      if (coin(rng, 0.3)) {
        ExprPtr extra = coin(rng, 0.6) ? make_given(irand(rng, 1, g))
                                       : ExprPtr(small_const(rng));
        lhs = make_binary(coin(rng, 0.5) ? BinaryOp::Add : BinaryOp::Sub,
                          std::move(lhs), std::move(extra));
      }
      ExprPtr rhs =
          make_binary(coin(rng, 0.55) ? BinaryOp::Add : BinaryOp::Mul,
                      given_expr(rng, g, 2), given_expr(rng, g, 1));
      set.equations.push_back({std::move(lhs), std::move(rhs)});
    }

    LinearSystem sys;
    sys.set = std::move(set);
    sys.givens.resize(static_cast<std::size_t>(g));
    for (double& v : sys.givens) v = drand(rng, 0.5, 10.5);

    // The systems are linear in the unknowns by construction, so residual
    // probing recovers the exact coefficient matrix.
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m, 0.0);
    std::vector<double> zero(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const Equation& eq = sys.set.equations[static_cast<std::size_t>(i)];
      const auto residual = [&](const std::vector<double>& u) {
        return eval_ref(eq.lhs, sys.givens, u) -
               eval_ref(eq.rhs, sys.givens, u);
      };
      b[static_cast<std::size_t>(i)] = -residual(zero);
      for (int j = 0; j < m; ++j) {
        std::vector<double> unit(m, 0.0);
        unit[static_cast<std::size_t>(j)] = 1.0;
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            residual(unit) + b[static_cast<std::size_t>(i)];
      }
    }
    sys.answers = cramer_solve(a, b);
    out.push_back(std::move(sys));
  }
  return out;
}

std::optional<EquationSet> corrupt_set(const EquationSet& set,
                                       std::mt19937_64& rng) {
  struct Site {
    std::size_t eq;
    bool on_lhs;
    std::function<ExprPtr()> build;
  };
  std::vector<Site> sites;
  const std::function<ExprPtr(ExprPtr)> identity = [](ExprPtr e) {
    return e;
  };
  for (std::size_t i = 0; i < set.equations.size(); ++i) {
    for (const bool on_lhs : {true, false}) {
      const ExprPtr& side =
          on_lhs ? set.equations[i].lhs : set.equations[i].rhs;
      std::vector<std::function<ExprPtr()>> builds;
      collect_mutations(side, identity, builds);
      for (auto& build : builds)
        sites.push_back({i, on_lhs, std::move(build)});
    }
  }
  std::shuffle(sites.begin(), sites.end(), rng);

  const int given_count = std::max(1, max_given_index(set));
  const int unknown_count = std::max(1, max_unknown_index(set));
  for (const Site& site : sites) {
    const ExprPtr& before =
        site.on_lhs ? set.equations[site.eq].lhs : set.equations[site.eq].rhs;
    const ExprPtr after = site.build();
    // The structural guards cannot exclude every value-preserving rewrite
    // (e.g. swapping a difference of equal-valued operands), so accept only
    // mutations that demonstrably change the side at some probe point.
    bool changes_value = false;
    for (int probe = 0; probe < 4 && !changes_value; ++probe) {
      std::vector<double> givens(static_cast<std::size_t>(given_count));
      std::vector<double> unknowns(static_cast<std::size_t>(unknown_count));
      for (double& v : givens) v = drand(rng, 0.5, 10.5);
      for (double& v : unknowns) v = drand(rng, 0.5, 10.5);
      const double a = eval_ref(before, givens, unknowns);
      const double c = eval_ref(after, givens, unknowns);
      changes_value = std::abs(a - c) >
                      1e-9 * std::max({1.0, std::abs(a), std::abs(c)});
    }
    if (!changes_value) continue;
    EquationSet out = set;
    Equation& eq = out.equations[site.eq];
    if (site.on_lhs)
      eq.lhs = after;
    else
      eq.rhs = after;
    return out;
  }
  return std::nullopt;
}

std::multiset<std::string> leaf_multiset(const EquationSet& set) {
  std::multiset<std::string> out;
  for (const Equation& eq : set.equations) {
    collect_leaves(eq.lhs, out);
    collect_leaves(eq.rhs, out);
  }
  return out;
}

std::multiset<int> unknown_occurrence_counts(const EquationSet& set) {
  std::map<int, int> counts;
  for (const Equation& eq : set.equations) {
    count_unknown_leaves(eq.lhs, counts);
    count_unknown_leaves(eq.rhs, counts);
  }
  std::multiset<int> out;
  for (const auto& [index, n] : counts) out.insert(n);
  return out;
}

ExprPtr reverse_chains_alt(const ExprPtr& e, BinaryOp op) {
  const BinaryNode* b = e->binary();
  if (b == nullptr) return e;
  if (b->op == op) {
    std::vector<ExprPtr> operands;
    collect_chain_alt(e, op, operands);
    std::reverse(operands.begin(), operands.end());
    for (ExprPtr& operand : operands)
      operand = reverse_chains_alt(operand, op);
    auto it = operands.cbegin();
    return refill_chain_alt(e, op, it);
  }
  return make_binary(b->op, reverse_chains_alt(b->left, op),
                     reverse_chains_alt(b->right, op));
}

std::vector<MwpRecord> make_record_corpus(std::uint64_t seed,
                                          std::size_t count) {
  const std::vector<LinearSystem> systems = make_linear_corpus(seed, count);
  std::vector<MwpRecord> out;
  out.reserve(count);
  for (std::size_t k = 0; k < systems.size(); ++k) {
    const LinearSystem& sys = systems[k];
    MwpRecord rec;
    rec.id = "syn-" + std::to_string(k);
    std::ostringstream text;
    text << "With";
    for (std::size_t i = 1; i <= sys.givens.size(); ++i)
      text << (i == 1 ? " " : " , ") << "n_" << i;
    text << " given , find every unknown .";
    rec.text = text.str();
    rec.givens = sys.givens;
    rec.equations = sys.set;
    rec.answers = sys.answers;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<MwpRecord> make_solution_form_corpus(std::uint64_t seed,
                                                 std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<MwpRecord> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int m = irand(rng, 1, 3);
    const int g = irand(rng, 1, 5);
    MwpRecord rec;
    rec.id = "sol-" + std::to_string(k);
    rec.text = "Each quantity n_1 through n_" + std::to_string(g) +
               " is known ; the unknowns are already isolated .";
    rec.givens.resize(static_cast<std::size_t>(g));
    for (double& v : rec.givens) v = drand(rng, 0.5, 10.5);
    for (int j = 1; j <= m; ++j)
      rec.equations.equations.push_back(
          {make_unknown(j), given_expr(rng, g, 2)});
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace mwpaug::testing
