/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mwpaug/ast.hpp"
#include "mwpaug/pipeline.hpp"

namespace mwpaug::testing {

/// A generated linear system with one sampled given-binding and the
/// matching solution, both computed by test-side code independent of the
/// library's solver.
struct LinearSystem {
  EquationSet set;
  std::vector<double> givens;   // value of n_i at position i-1
  std::vector<double> answers;  // value of x_j at position j-1 (Cramer)
};

/// Random solvable systems: 1-3 unknowns, 1-5 givens, operators {+,-,*,/}.
/// Construction keeps the coefficient matrix lower-triangular with a
/// positive-given diagonal, so the system stays nonsingular for every
/// positive binding of the givens.
std::vector<LinearSystem> make_linear_corpus(std::uint64_t seed,
                                             std::size_t count);

/// Independent reference evaluator (recursive, no error handling beyond
/// what the corpus can produce).
double eval_ref(const ExprPtr& e, const std::vector<double>& givens,
                const std::vector<double>& unknowns);

/// Applies one random semantics-changing mutation: an operator flip
/// (+ <-> -, * <-> /) away from identity-preserving operands, or an
/// operand swap on "-" or "/" where the sides differ. Mutations that could
/// introduce division by an unknown are excluded so the result stays
/// evaluable everywhere. Returns nullopt when no eligible site exists.
std::optional<EquationSet> corrupt_set(const EquationSet& set,
                                       std::mt19937_64& rng);

/// Leaf tokens (constants, givens, unknowns) of the whole set, as a
/// multiset for preservation checks.
std::multiset<std::string> leaf_multiset(const EquationSet& set);

/// Occurrence count per unknown index, order-insensitive.
std::multiset<int> unknown_occurrence_counts(const EquationSet& set);

/// Chain reversal identical in meaning to the library's add/mul rewrite
/// but with the opposite internal step order (operand list reversed before
/// recursing into operands), for order-independence checks.
ExprPtr reverse_chains_alt(const ExprPtr& e, BinaryOp op);

/// Synthetic normalized records wrapping make_linear_corpus; ids "syn-<k>",
/// text mentions every n_i token, answers filled from the Cramer solution.
std::vector<MwpRecord> make_record_corpus(std::uint64_t seed,
                                          std::size_t count);

/// Records whose equations are all already "x_j = expr-free-of-unknowns".
std::vector<MwpRecord> make_solution_form_corpus(std::uint64_t seed,
                                                 std::size_t count);

}  // namespace mwpaug::testing
