/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/transforms.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <string>
#include <tuple>
#include <utility>

namespace mwpaug {

namespace {

bool is_chain_op(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Mul;
}

/// Appends the operands of the maximal `op` chain rooted at `e`, in-order.
void collect_chain(const ExprPtr& e, BinaryOp op, std::vector<ExprPtr>& out) {
  const BinaryNode* b = e->binary();
  if (b != nullptr && b->op == op) {
    collect_chain(b->left, op, out);
    collect_chain(b->right, op, out);
    return;
  }
  out.push_back(e);
}

/// Rebuilds the chain skeleton of `skel`, drawing operands from `it`
/// left-to-right. The returned tree has the same arrangement of `op` nodes
/// as `skel` but new operands.
ExprPtr refill_chain(const ExprPtr& skel, BinaryOp op,
                     std::vector<ExprPtr>::const_iterator& it) {
  const BinaryNode* b = skel->binary();
  if (b != nullptr && b->op == op) {
    ExprPtr left = refill_chain(b->left, op, it);
    ExprPtr right = refill_chain(b->right, op, it);
    return make_binary(op, std::move(left), std::move(right));
  }
  return *it++;
}

/// Reverses every maximal `op` chain in `e`, preserving each chain's shape.
ExprPtr reverse_chains(const ExprPtr& e, BinaryOp op) {
  const BinaryNode* b = e->binary();
  if (b == nullptr) return e;
  if (b->op == op) {
    std::vector<ExprPtr> operands;
    collect_chain(e, op, operands);
    for (ExprPtr& operand : operands) operand = reverse_chains(operand, op);
    std::reverse(operands.begin(), operands.end());
    auto it = operands.cbegin();
    return refill_chain(e, op, it);
  }
  return make_binary(b->op, reverse_chains(b->left, op),
                      reverse_chains(b->right, op));
}

/// Rank of the smallest variable leaf under `e`: given n_i ranks i, unknown
/// x_j ranks given_cap + j, constants do not contribute. LLONG_MAX when the
/// subtree is variable-free.
long long min_leaf_rank(const ExprPtr& e, long long given_cap) {
  if (const GivenNode* g = e->given()) return g->index;
  if (const UnknownNode* u = e->unknown()) return given_cap + u->index;
  if (const BinaryNode* b = e->binary())
    return std::min(min_leaf_rank(b->left, given_cap),
                    min_leaf_rank(b->right, given_cap));
  return LLONG_MAX;
}

ExprPtr rebuild_left_assoc(BinaryOp op, const std::vector<ExprPtr>& operands) {
  ExprPtr acc = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i)
    acc = make_binary(op, acc, operands[i]);
  return acc;
}

EquationSet map_sides(const EquationSet& set,
                      const std::function<ExprPtr(const ExprPtr&)>& fn) {
  EquationSet out;
  out.equations.reserve(set.equations.size());
  for (const Equation& eq : set.equations)
    out.equations.push_back({fn(eq.lhs), fn(eq.rhs)});
  return out;
}

TransformOutcome outcome(ControlCode code, const EquationSet& input,
                         EquationSet rewritten) {
  if (equal(input, rewritten)) return {code, std::nullopt};
  return {code, std::move(rewritten)};
}

/// True when the single occurrence of x_j inside `e` sits below +,-,*,/
/// nodes only. Callers guarantee the occurrence count beforehand.
bool invertible_path(const ExprPtr& e, int j) {
  if (const UnknownNode* u = e->unknown()) return u->index == j;
  const BinaryNode* b = e->binary();
  if (b == nullptr) return false;
  if (contains_unknown(b->left, j) || contains_unknown(b->right, j))
    return b->op != BinaryOp::Pow &&
           (invertible_path(b->left, j) || invertible_path(b->right, j));
  return false;
}

/// Peels operators off `side` until the bare x_j leaf remains, mirroring
/// each step onto `rest`. Returns the isolated right-hand side.
ExprPtr isolate(ExprPtr side, ExprPtr rest, int j) {
  while (side->unknown() == nullptr) {
    const BinaryNode* b = side->binary();
    const bool in_left = contains_unknown(b->left, j);
    const ExprPtr& keep = in_left ? b->left : b->right;
    const ExprPtr& other = in_left ? b->right : b->left;
    switch (b->op) {
      case BinaryOp::Add:
        rest = make_binary(BinaryOp::Sub, rest, other);
        break;
      case BinaryOp::Sub:
        rest = in_left ? make_binary(BinaryOp::Add, rest, other)
                       : make_binary(BinaryOp::Sub, other, rest);
        break;
      case BinaryOp::Mul:
        rest = make_binary(BinaryOp::Div, rest, other);
        break;
      case BinaryOp::Div:
        rest = in_left ? make_binary(BinaryOp::Mul, rest, other)
                       : make_binary(BinaryOp::Div, other, rest);
        break;
      case BinaryOp::Pow:
        break;  // unreachable: invertible_path excludes ^
    }
    side = keep;
  }
  return rest;
}

Equation solution_form(const Equation& eq) {
  const int m = std::max(max_unknown_index(eq.lhs), max_unknown_index(eq.rhs));
  for (int j = 1; j <= m; ++j) {
    if (count_unknown(eq, j) != 1) continue;
    const bool on_lhs = contains_unknown(eq.lhs, j);
    const ExprPtr& side = on_lhs ? eq.lhs : eq.rhs;
    if (!invertible_path(side, j)) continue;
    ExprPtr rest = isolate(side, on_lhs ? eq.rhs : eq.lhs, j);
    return {make_unknown(j), std::move(rest)};
  }
  return eq;
}

}  // namespace

ExprPtr canonicalize(const ExprPtr& e) {
  const BinaryNode* b = e->binary();
  if (b == nullptr) return e;
  if (!is_chain_op(b->op))
    return make_binary(b->op, canonicalize(b->left), canonicalize(b->right));

  std::vector<ExprPtr> operands;
  collect_chain(e, b->op, operands);
  for (ExprPtr& operand : operands) operand = canonicalize(operand);

  long long given_cap = 0;
  for (const ExprPtr& operand : operands)
    given_cap = std::max<long long>(given_cap, max_given_index(operand));

  struct Keyed {
    long long rank;
    std::string repr;
    ExprPtr expr;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(operands.size());
  for (ExprPtr& operand : operands)
    keyed.push_back({min_leaf_rank(operand, given_cap),
                     expr_prefix_string(operand), std::move(operand)});
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const Keyed& a, const Keyed& b) {
                     return std::tie(a.rank, a.repr) < std::tie(b.rank, b.repr);
                   });

  std::vector<ExprPtr> sorted;
  sorted.reserve(keyed.size());
  for (Keyed& k : keyed) sorted.push_back(std::move(k.expr));
  return rebuild_left_assoc(b->op, sorted);
}

Equation canonicalize(const Equation& eq) {
  return {canonicalize(eq.lhs), canonicalize(eq.rhs)};
}

EquationSet canonicalize(const EquationSet& set) {
  EquationSet out;
  out.equations.reserve(set.equations.size());
  for (const Equation& eq : set.equations)
    out.equations.push_back(canonicalize(eq));
  return out;
}

TransformOutcome apply_add(const EquationSet& set) {
  return outcome(ControlCode::Add, set, map_sides(set, [](const ExprPtr& e) {
                   return reverse_chains(e, BinaryOp::Add);
                 }));
}

TransformOutcome apply_mul(const EquationSet& set) {
  return outcome(ControlCode::Mul, set, map_sides(set, [](const ExprPtr& e) {
                   return reverse_chains(e, BinaryOp::Mul);
                 }));
}

TransformOutcome apply_sol(const EquationSet& set) {
  EquationSet out;
  out.equations.reserve(set.equations.size());
  for (const Equation& eq : set.equations)
    out.equations.push_back(solution_form(eq));
  return outcome(ControlCode::Sol, set, std::move(out));
}

TransformOutcome apply_equ(const EquationSet& set) {
  if (set.equations.size() < 2) return {ControlCode::Equ, std::nullopt};
  EquationSet out = set;
  std::rotate(out.equations.begin(), out.equations.end() - 1,
              out.equations.end());
  return outcome(ControlCode::Equ, set, std::move(out));
}

TransformOutcome apply_var(const EquationSet& set) {
  const int m = max_unknown_index(set);
  if (m < 2) return {ControlCode::Var, std::nullopt};
  EquationSet out =
      map_unknown_indices(set, [m](int i) { return (i % m) + 1; });
  return outcome(ControlCode::Var, set, std::move(out));
}

TransformOutcome apply_code(const EquationSet& set, ControlCode code) {
  switch (code) {
    case ControlCode::Orig:
      return {ControlCode::Orig, std::nullopt};
    case ControlCode::Add:
      return apply_add(set);
    case ControlCode::Mul:
      return apply_mul(set);
    case ControlCode::Sol:
      return apply_sol(set);
    case ControlCode::Equ:
      return apply_equ(set);
    case ControlCode::Var:
      return apply_var(set);
  }
  return {code, std::nullopt};  // unreachable
}

std::vector<GeneratedVariant> generate_all(
    const EquationSet& canonical, const std::vector<ControlCode>& enabled) {
  const auto is_enabled = [&enabled](ControlCode code) {
    return std::find(enabled.begin(), enabled.end(), code) != enabled.end();
  };
  std::vector<GeneratedVariant> out;
  out.push_back({ControlCode::Orig, canonical});
  for (ControlCode code : kTransformOrder) {
    if (!is_enabled(code)) continue;
    TransformOutcome t = apply_code(canonical, code);
    if (t.result) out.push_back({code, std::move(*t.result)});
  }
  return out;
}

std::vector<GeneratedVariant> generate_all(const EquationSet& canonical) {
  return generate_all(canonical,
                      {kAllCodes.begin(), kAllCodes.end()});
}

}  // namespace mwpaug
