/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>

namespace mwpaug {

namespace {

constexpr int kMaxLinearUnknowns = 8;
constexpr double kRootGridMin = -100.0;
constexpr double kRootGridMax = 100.0;
constexpr int kRootGridPoints = 4001;
constexpr int kBisectIters = 100;

[[noreturn]] void div_by_zero() {
  throw EvalError(EvalErrorKind::DivisionByZero, "division by zero");
}

double eval_pow(double base, double exp) {
  if (base == 0.0 && exp < 0.0) div_by_zero();
  if (base < 0.0 && exp != std::floor(exp))
    throw EvalError(EvalErrorKind::DomainError,
                    "negative base with fractional exponent");
  return std::pow(base, exp);
}

double eval_rec(const ExprPtr& e, const Bindings& b) {
  if (const ConstantNode* c = e->constant()) return c->value.to_double();
  if (const GivenNode* g = e->given()) {
    auto it = b.givens.find(g->index);
    if (it == b.givens.end())
      throw EvalError(EvalErrorKind::UnboundVariable,
                      "unbound variable n_" + std::to_string(g->index));
    return it->second;
  }
  if (const UnknownNode* u = e->unknown()) {
    auto it = b.unknowns.find(u->index);
    if (it == b.unknowns.end())
      throw EvalError(EvalErrorKind::UnboundVariable,
                      "unbound variable x_" + std::to_string(u->index));
    return it->second;
  }
  const BinaryNode* n = e->binary();
  const double l = eval_rec(n->left, b);
  const double r = eval_rec(n->right, b);
  switch (n->op) {
    case BinaryOp::Add: return l + r;
    case BinaryOp::Sub: return l - r;
    case BinaryOp::Mul: return l * r;
    case BinaryOp::Div:
      if (r == 0.0) div_by_zero();
      return l / r;
    case BinaryOp::Pow: return eval_pow(l, r);
  }
  return 0.0;
}

// Uniform double in [lo, hi) with a portable bit-level construction, so a
// fixed seed reproduces the same samples everywhere.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    const double u =
        static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + (hi - lo) * u;
  }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Linear form c0 + sum coef[j-1] * x_j over at most kMaxLinearUnknowns.
struct LinForm {
  double c0 = 0.0;
  std::array<double, kMaxLinearUnknowns> coef{};

  bool constant() const {
    for (double c : coef)
      if (c != 0.0) return false;
    return true;
  }
};

// nullopt: expression is not linear in the unknowns. Throws EvalError on
// degenerate arithmetic (division by ~zero given subexpressions).
std::optional<LinForm> linear_form(const ExprPtr& e, const Bindings& givens,
                                   int m) {
  if (const ConstantNode* c = e->constant())
    return LinForm{c->value.to_double(), {}};
  if (const GivenNode* g = e->given()) {
    Bindings b;
    b.givens = givens.givens;
    return LinForm{eval_rec(e, b), {}};
  }
  if (const UnknownNode* u = e->unknown()) {
    LinForm f;
    if (u->index > m) return std::nullopt;
    f.coef[u->index - 1] = 1.0;
    return f;
  }
  const BinaryNode* n = e->binary();
  auto l = linear_form(n->left, givens, m);
  if (!l) return std::nullopt;
  auto r = linear_form(n->right, givens, m);
  if (!r) return std::nullopt;
  LinForm out;
  switch (n->op) {
    case BinaryOp::Add:
      out.c0 = l->c0 + r->c0;
      for (int j = 0; j < m; ++j) out.coef[j] = l->coef[j] + r->coef[j];
      return out;
    case BinaryOp::Sub:
      out.c0 = l->c0 - r->c0;
      for (int j = 0; j < m; ++j) out.coef[j] = l->coef[j] - r->coef[j];
      return out;
    case BinaryOp::Mul:
      if (l->constant()) {
        out.c0 = l->c0 * r->c0;
        for (int j = 0; j < m; ++j) out.coef[j] = l->c0 * r->coef[j];
        return out;
      }
      if (r->constant()) {
        out.c0 = l->c0 * r->c0;
        for (int j = 0; j < m; ++j) out.coef[j] = r->c0 * l->coef[j];
        return out;
      }
      return std::nullopt;
    case BinaryOp::Div:
      if (!r->constant()) return std::nullopt;
      if (std::abs(r->c0) < 1e-12) div_by_zero();
      out.c0 = l->c0 / r->c0;
      for (int j = 0; j < m; ++j) out.coef[j] = l->coef[j] / r->c0;
      return out;
    case BinaryOp::Pow:
      if (!r->constant()) return std::nullopt;
      if (l->constant()) return LinForm{eval_pow(l->c0, r->c0), {}};
      if (r->c0 == 1.0) return l;
      if (r->c0 == 0.0) return LinForm{1.0, {}};
      return std::nullopt;
  }
  return std::nullopt;
}

SolveResult gauss_solve(std::vector<std::array<double, kMaxLinearUnknowns + 1>>
                            rows,
                        int m) {
  const std::size_t n = rows.size();
  constexpr double kPivotEps = 1e-12;
  std::vector<int> pivot_col_of_row;
  int rank = 0;
  for (int col = 0; col < m && rank < static_cast<int>(n); ++col) {
    std::size_t best = static_cast<std::size_t>(rank);
    for (std::size_t r = best + 1; r < n; ++r)
      if (std::abs(rows[r][col]) > std::abs(rows[best][col])) best = r;
    if (std::abs(rows[best][col]) < kPivotEps) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[best]);
    const auto& prow = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      const double factor = rows[r][col] / prow[col];
      if (factor == 0.0) continue;
      for (int c = col; c <= m; ++c) rows[r][c] -= factor * prow[c];
    }
    pivot_col_of_row.push_back(col);
    ++rank;
  }
  if (rank < m)
    return {SolveResult::Status::NotSolvable, {}, "singular system"};
  for (std::size_t r = static_cast<std::size_t>(rank); r < n; ++r) {
    if (std::abs(rows[r][m]) > 1e-9)
      return {SolveResult::Status::NotSolvable, {}, "inconsistent system"};
  }
  Solution sol;
  for (int r = 0; r < rank; ++r) {
    const int col = pivot_col_of_row[static_cast<std::size_t>(r)];
    sol.unknowns[col + 1] =
        rows[static_cast<std::size_t>(r)][m] / rows[static_cast<std::size_t>(r)][col];
  }
  return {SolveResult::Status::Solved, {std::move(sol)}, ""};
}

bool residual_ok(double lhs, double rhs, const OracleConfig& cfg) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) <= std::max(cfg.abs_floor, cfg.residual_tol * scale);
}

SolveResult root_search(const Equation& eq, int unknown, const Bindings& givens,
                        const OracleConfig& cfg) {
  Bindings b;
  b.givens = givens.givens;
  auto f = [&](double x) -> std::optional<double> {
    b.unknowns[unknown] = x;
    try {
      const double v = evaluate_residual(eq, b);
      if (!std::isfinite(v)) return std::nullopt;
      return v;
    } catch (const EvalError&) {
      return std::nullopt;
    }
  };
  const double step =
      (kRootGridMax - kRootGridMin) / static_cast<double>(kRootGridPoints - 1);
  std::vector<double> roots;
  std::optional<double> prev = f(kRootGridMin);
  double prev_x = kRootGridMin;
  for (int i = 1; i < kRootGridPoints; ++i) {
    const double x = kRootGridMin + step * i;
    const std::optional<double> cur = f(x);
    if (prev && cur && ((*prev < 0.0) != (*cur < 0.0) || *prev == 0.0)) {
      double lo = prev_x, hi = x;
      double flo = *prev;
      for (int it = 0; it < kBisectIters; ++it) {
        const double mid = 0.5 * (lo + hi);
        const std::optional<double> fm = f(mid);
        if (!fm) break;
        if ((flo < 0.0) != (*fm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          flo = *fm;
        }
      }
      const double root = 0.5 * (lo + hi);
      b.unknowns[unknown] = root;
      try {
        const double l = eval_rec(eq.lhs, b);
        const double r = eval_rec(eq.rhs, b);
        if (residual_ok(l, r, cfg)) {
          bool dup = false;
          for (double seen : roots)
            if (std::abs(seen - root) < 1e-7) dup = true;
          if (!dup) roots.push_back(root);
        }
      } catch (const EvalError&) {
      }
    }
    prev = cur;
    prev_x = x;
  }
  if (roots.empty())
    return {SolveResult::Status::NotSolvable, {},
            "no root found on the search grid"};
  SolveResult out;
  out.status = SolveResult::Status::Solved;
  for (double r : roots) {
    Solution s;
    s.unknowns[unknown] = r;
    out.solutions.push_back(std::move(s));
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double evaluate(const ExprPtr& e, const Bindings& b) {
  const double v = eval_rec(e, b);
  if (!std::isfinite(v))
    throw EvalError(EvalErrorKind::DomainError, "non-finite result");
  return v;
}

double evaluate_residual(const Equation& eq, const Bindings& b) {
  return evaluate(eq.lhs, b) - evaluate(eq.rhs, b);
}

SolveResult solve_system(const EquationSet& set, const Bindings& givens,
                         const OracleConfig& cfg) {
  const int m = max_unknown_index(set);
  if (m == 0)
    return {SolveResult::Status::Inconclusive, {}, "no unknowns to solve for"};
  if (m > kMaxLinearUnknowns)
    return {SolveResult::Status::Inconclusive, {}, "too many unknowns"};
  bool linear = true;
  std::vector<std::array<double, kMaxLinearUnknowns + 1>> rows;
  try {
    for (const Equation& eq : set.equations) {
      auto l = linear_form(eq.lhs, givens, m);
      auto r = l ? linear_form(eq.rhs, givens, m) : std::nullopt;
      if (!l || !r) {
        linear = false;
        break;
      }
      std::array<double, kMaxLinearUnknowns + 1> row{};
      for (int j = 0; j < m; ++j) row[j] = l->coef[j] - r->coef[j];
      row[m] = r->c0 - l->c0;
      rows.push_back(row);
    }
  } catch (const EvalError& err) {
    return {SolveResult::Status::NotSolvable, {},
            std::string("degenerate arithmetic: ") + err.what()};
  }
  if (linear) return gauss_solve(std::move(rows), m);
  if (set.equations.size() == 1 && m == 1)
    return root_search(set.equations[0], 1, givens, cfg);
  return {SolveResult::Status::Inconclusive, {},
          "nonlinear system with multiple equations or unknowns"};
}

SolveResult compute_answer(const EquationSet& set,
                           const std::vector<double>& givens,
                           const OracleConfig& cfg) {
  Bindings b;
  for (std::size_t i = 0; i < givens.size(); ++i)
    b.givens[static_cast<int>(i) + 1] = givens[i];
  return solve_system(set, b, cfg);
}

Correspondence correspondence_for_code(const EquationSet& orig,
                                       ControlCode code) {
  Correspondence corr;
  if (code == ControlCode::Equ) {
    const std::size_t n = orig.equations.size();
    corr.cand_equation_from.resize(n);
    for (std::size_t k = 0; k < n; ++k)
      corr.cand_equation_from[k] = k == 0 ? n - 1 : k - 1;
  } else if (code == ControlCode::Var) {
    const int m = max_unknown_index(orig);
    corr.unknown_to_cand.resize(static_cast<std::size_t>(std::max(m, 0)));
    for (int j = 1; j <= m; ++j)
      corr.unknown_to_cand[static_cast<std::size_t>(j - 1)] = (j % m) + 1;
  }
  return corr;
}

namespace {

std::map<int, double> remap_unknowns(const std::map<int, double>& values,
                                     const std::vector<int>& to_cand,
                                     bool inverse) {
  if (to_cand.empty()) return values;
  std::map<int, double> out;
  for (const auto& [j, v] : values) {
    int mapped = j;
    if (!inverse) {
      if (j >= 1 && j <= static_cast<int>(to_cand.size()))
        mapped = to_cand[static_cast<std::size_t>(j - 1)];
    } else {
      for (std::size_t k = 0; k < to_cand.size(); ++k)
        if (to_cand[k] == j) mapped = static_cast<int>(k) + 1;
    }
    out[mapped] = v;
  }
  return out;
}

Bindings sample_bindings(SampleRng& rng, const std::set<int>& given_idx,
                         int unknown_count, const OracleConfig& cfg) {
  Bindings b;
  for (int i : given_idx) b.givens[i] = rng.uniform(cfg.sample_min, cfg.sample_max);
  for (int j = 1; j <= unknown_count; ++j)
    b.unknowns[j] = rng.uniform(cfg.sample_min, cfg.sample_max);
  return b;
}

std::set<int> union_given_indices(const EquationSet& a, const EquationSet& b) {
  std::set<int> out = given_indices(a);
  for (int i : given_indices(b)) out.insert(i);
  return out;
}

Verdict pointwise_check(const EquationSet& orig, const EquationSet& cand,
                        const OracleConfig& cfg, const Correspondence& corr) {
  const std::size_t n = orig.equations.size();
  const std::set<int> gidx = union_given_indices(orig, cand);
  const int m = std::max(max_unknown_index(orig), max_unknown_index(cand));
  SampleRng rng(cfg.seed);
  if (cand.equations.size() != n) {
    Verdict v;
    v.kind = Verdict::Kind::NotEquivalent;
    v.witness = sample_bindings(rng, gidx, m, cfg);
    v.reason = "equation counts differ";
    return v;
  }
  int valid = 0;
  const int budget = cfg.sample_count * 10;
  for (int attempt = 0; attempt < budget && valid < cfg.sample_count;
       ++attempt) {
    const Bindings b = sample_bindings(rng, gidx, m, cfg);
    Bindings bc = b;
    if (!corr.unknown_to_cand.empty()) {
      bc.unknowns = remap_unknowns(b.unknowns, corr.unknown_to_cand, false);
    }
    bool degenerate = false;
    for (std::size_t k = 0; k < n && !degenerate; ++k) {
      const std::size_t src =
          corr.cand_equation_from.empty() ? k : corr.cand_equation_from[k];
      double ro, rc;
      try {
        ro = evaluate_residual(orig.equations[src], b);
        rc = evaluate_residual(cand.equations[k], bc);
      } catch (const EvalError&) {
        degenerate = true;
        break;
      }
      const double scale = std::max(std::abs(ro), std::abs(rc));
      if (std::abs(ro - rc) >
          std::max(cfg.abs_floor, cfg.pointwise_tol * scale)) {
        Verdict v;
        v.kind = Verdict::Kind::NotEquivalent;
        v.witness = b;
        v.reason = "residuals of equation " + std::to_string(src + 1) +
                   " differ: " + std::to_string(ro) + " vs " +
                   std::to_string(rc);
        return v;
      }
    }
    if (!degenerate) ++valid;
  }
  if (valid >= cfg.sample_count) return {Verdict::Kind::Equivalent, {}, ""};
  return {Verdict::Kind::Inconclusive, {},
          "too many degenerate samples in pointwise comparison"};
}

// Every solution of one set must satisfy every equation of the other,
// after lining unknowns up through the correspondence.
Verdict solutions_check(const EquationSet& orig, const EquationSet& cand,
                        const OracleConfig& cfg, const Correspondence& corr) {
  const std::set<int> gidx = union_given_indices(orig, cand);
  SampleRng rng(cfg.seed);
  int valid = 0;
  std::string last_reason = "no solvable sample";
  const int budget = cfg.sample_count * 10;
  for (int attempt = 0; attempt < budget && valid < cfg.sample_count;
       ++attempt) {
    Bindings b = sample_bindings(rng, gidx, 0, cfg);
    const SolveResult ro = solve_system(orig, b, cfg);
    if (ro.status != SolveResult::Status::Solved) {
      last_reason = "source set: " + ro.reason;
      continue;
    }
    bool degenerate = false;
    for (const Solution& sol : ro.solutions) {
      Bindings bc = b;
      bc.unknowns = remap_unknowns(sol.unknowns, corr.unknown_to_cand, false);
      for (const Equation& eq : cand.equations) {
        double l, r;
        try {
          l = evaluate(eq.lhs, bc);
          r = evaluate(eq.rhs, bc);
        } catch (const EvalError&) {
          degenerate = true;
          break;
        }
        if (!residual_ok(l, r, cfg)) {
          Verdict v;
          v.kind = Verdict::Kind::NotEquivalent;
          v.witness = bc;
          v.reason = "a solution of the source set violates the candidate";
          return v;
        }
      }
      if (degenerate) break;
    }
    if (degenerate) continue;
    const SolveResult rc = solve_system(cand, b, cfg);
    if (rc.status != SolveResult::Status::Solved) {
      last_reason = "candidate set: " + rc.reason;
      continue;
    }
    for (const Solution& sol : rc.solutions) {
      Bindings bo = b;
      bo.unknowns = remap_unknowns(sol.unknowns, corr.unknown_to_cand, true);
      for (const Equation& eq : orig.equations) {
        double l, r;
        try {
          l = evaluate(eq.lhs, bo);
          r = evaluate(eq.rhs, bo);
        } catch (const EvalError&) {
          degenerate = true;
          break;
        }
        if (!residual_ok(l, r, cfg)) {
          Verdict v;
          v.kind = Verdict::Kind::NotEquivalent;
          v.witness = bo;
          v.reason = "a solution of the candidate violates the source set";
          return v;
        }
      }
      if (degenerate) break;
    }
    if (degenerate) continue;
    ++valid;
  }
  if (valid >= cfg.sample_count) return {Verdict::Kind::Equivalent, {}, ""};
  return {Verdict::Kind::Inconclusive, {}, last_reason};
}

}  // namespace

Verdict check_equivalent(const EquationSet& orig, const EquationSet& cand,
                         EquivalenceMode mode, const OracleConfig& cfg,
                         const Correspondence& corr) {
  if (mode == EquivalenceMode::Pointwise)
    return pointwise_check(orig, cand, cfg, corr);
  return solutions_check(orig, cand, cfg, corr);
}

Verdict verdict_for_code(const EquationSet& orig, const EquationSet& cand,
                         ControlCode code, const OracleConfig& cfg) {
  const Correspondence corr = correspondence_for_code(orig, code);
  const EquivalenceMode mode =
      (code == ControlCode::Sol || code == ControlCode::Equ ||
       code == ControlCode::Var)
          ? EquivalenceMode::SolutionSet
          : EquivalenceMode::Pointwise;
  return check_equivalent(orig, cand, mode, cfg, corr);
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view record_id,
                          ControlCode code) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the record id
  for (char c : record_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = splitmix64(global_seed);
  s = splitmix64(s ^ h);
  s = splitmix64(s ^ static_cast<std::uint64_t>(code));
  return s;
}

}  // namespace mwpaug
