/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwpaug/ast.hpp"
#include "mwpaug/control_codes.hpp"

namespace mwpaug {

/// Values for n_i (givens) and x_j (unknowns), keyed by index.
struct Bindings {
  std::map<int, double> givens;
  std::map<int, double> unknowns;
};

enum class EvalErrorKind { DivisionByZero, DomainError, UnboundVariable };

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

/// Recursive evaluation under a binding. Throws EvalError on division by
/// zero, on domain faults (negative base with fractional exponent,
/// non-finite results) and on unbound variables.
double evaluate(const ExprPtr& e, const Bindings& b);
double evaluate_residual(const Equation& eq, const Bindings& b);  // lhs - rhs

struct OracleConfig {
  std::uint64_t seed = 42;
  int sample_count = 100;
  // Uniform sampling range for variable values; kept away from zero.
  double sample_min = 0.5;
  double sample_max = 10.5;
  double pointwise_tol = 1e-9;  // relative, residual-vs-residual
  double residual_tol = 1e-6;   // relative, solution-vs-equation
  double abs_floor = 1e-12;     // absolute comparison floor
};

struct Solution {
  std::map<int, double> unknowns;  // x_j -> value
};

struct SolveResult {
  enum class Status { Solved, NotSolvable, Inconclusive };
  Status status = Status::Inconclusive;
  std::vector<Solution> solutions;
  std::string reason;
};

/// Solves the set for its unknowns under fixed given values.
///
/// Systems that are symbolically linear in the unknowns (degree <= 1, no
/// unknown-by-unknown products or unknown divisors) go through Gaussian
/// elimination with partial pivoting; singular or inconsistent systems come
/// back NotSolvable. A single nonlinear equation in a single unknown falls
/// back to a bracketed bisection search over a uniform grid of 4001 points
/// on [-100, 100]; anything else is Inconclusive.
SolveResult solve_system(const EquationSet& set, const Bindings& givens,
                         const OracleConfig& cfg);

/// solve_system with givens supplied positionally: givens[i] binds n_{i+1}.
SolveResult compute_answer(const EquationSet& set,
                           const std::vector<double>& givens,
                           const OracleConfig& cfg);

enum class EquivalenceMode {
  /// Residuals lhs-rhs of corresponding equations agree on random bindings
  /// of all variables.
  Pointwise,
  /// Solutions of either set satisfy the other on random given bindings.
  SolutionSet,
};

/// Structural permutation introduced by a code, used to line the two sets
/// up before comparing. Empty vectors mean identity.
struct Correspondence {
  /// cand equation k corresponds to orig equation cand_equation_from[k].
  std::vector<std::size_t> cand_equation_from;
  /// orig unknown j plays the role of cand unknown unknown_to_cand[j-1].
  std::vector<int> unknown_to_cand;
};

struct Verdict {
  enum class Kind { Equivalent, NotEquivalent, Inconclusive };
  Kind kind = Kind::Inconclusive;
  Bindings witness;  // populated for NotEquivalent; reproducible from seed
  std::string reason;
};

/// Samples give-or-take sample_count bindings (degenerate draws are
/// discarded and redrawn up to a 10x budget) and compares the two sets.
/// Deterministic for a fixed cfg.seed.
Verdict check_equivalent(const EquationSet& orig, const EquationSet& cand,
                         EquivalenceMode mode, const OracleConfig& cfg,
                         const Correspondence& corr = {});

/// The permutation a code induces: equ rotates equations right by one,
/// var relabels x_i to x_{(i mod m) + 1}.
Correspondence correspondence_for_code(const EquationSet& orig,
                                       ControlCode code);

/// Mode and correspondence implied by the code: add/mul/orig compare
/// pointwise, sol/equ/var compare solution sets.
Verdict verdict_for_code(const EquationSet& orig, const EquationSet& cand,
                         ControlCode code, const OracleConfig& cfg);

/// Deterministic per-check seed from the run seed, record id and code.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view record_id,
                          ControlCode code);

}  // namespace mwpaug
