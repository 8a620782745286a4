/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <optional>
#include <vector>

#include "mwpaug/ast.hpp"
#include "mwpaug/control_codes.hpp"

namespace mwpaug {

/// Canonical form: every maximal chain of one commutative operator (+ or *)
/// is flattened, its operands recursively canonicalized, sorted by a stable
/// key, and rebuilt left-associated. The key orders operands by the smallest
/// variable they contain — givens n_1 < n_2 < ... < all unknowns x_1 < x_2
/// < ... — with variable-free operands last; ties fall back to the operand's
/// prefix serialization. Non-commutative nodes (-, /, ^) keep their shape.
/// Idempotent: canonicalize(canonicalize(e)) == canonicalize(e).
ExprPtr canonicalize(const ExprPtr& e);
Equation canonicalize(const Equation& eq);
EquationSet canonicalize(const EquationSet& set);

/// Result of one rewrite. `result` is empty when the rewrite left the set
/// structurally identical, so callers can skip emitting duplicates.
struct TransformOutcome {
  ControlCode code;
  std::optional<EquationSet> result;

  bool changed() const { return result.has_value(); }
};

/// Reverses the operand order of every maximal "+" chain while preserving
/// the chain's parenthesization shape: the chain is flattened, each operand
/// rewritten recursively, the operand list reversed, and the original tree
/// skeleton refilled. Applying the rewrite twice restores the input.
TransformOutcome apply_add(const EquationSet& set);

/// Same rewrite as apply_add, for "*" chains.
TransformOutcome apply_mul(const EquationSet& set);

/// Rewrites each equation as "x_j = <rest>" by isolating the lowest-indexed
/// unknown that occurs exactly once in the equation and is reachable from
/// its side's root through +, -, *, / nodes only (never through ^). Each
/// step peels the root operator onto the opposite side; equations with no
/// isolatable unknown are kept as-is.
TransformOutcome apply_sol(const EquationSet& set);

/// Rotates the equation order right by one (the last equation becomes the
/// first). Single-equation sets are unchanged.
TransformOutcome apply_equ(const EquationSet& set);

/// Renames unknowns cyclically: x_i -> x_((i mod m) + 1) where m is the
/// largest unknown index. Sets with fewer than two unknowns are unchanged.
TransformOutcome apply_var(const EquationSet& set);

/// Dispatch by code; ControlCode::Orig is the identity and never changes.
TransformOutcome apply_code(const EquationSet& set, ControlCode code);

struct GeneratedVariant {
  ControlCode code;
  EquationSet set;
};

/// The augmentation fan-out for one canonical set: the original always
/// comes first, then each enabled rewrite that actually changed the set, in
/// kTransformOrder. Each rewrite is applied to the canonical input
/// independently; variants are never chained.
std::vector<GeneratedVariant> generate_all(const EquationSet& canonical,
                                           const std::vector<ControlCode>& enabled);
std::vector<GeneratedVariant> generate_all(const EquationSet& canonical);

}  // namespace mwpaug
