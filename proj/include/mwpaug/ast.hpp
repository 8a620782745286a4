/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mwpaug/rational.hpp"

namespace mwpaug {

enum class BinaryOp : unsigned char { Add, Sub, Mul, Div, Pow };

/// "+", "-", "*", "/", "^".
std::string_view op_token(BinaryOp op);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct ConstantNode {
  Rational value;
};
struct GivenNode {
  int index;  // n_<index>, index >= 1
};
struct UnknownNode {
  int index;  // x_<index>, index >= 1
};
struct BinaryNode {
  BinaryOp op;
  ExprPtr left;
  ExprPtr right;
};

/// Immutable expression tree node. Trees are shared freely; rewrites build
/// new nodes and reuse untouched subtrees.
class Expr {
 public:
  using Node = std::variant<ConstantNode, GivenNode, UnknownNode, BinaryNode>;

  explicit Expr(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }
  const BinaryNode* binary() const { return std::get_if<BinaryNode>(&node_); }
  const ConstantNode* constant() const {
    return std::get_if<ConstantNode>(&node_);
  }
  const GivenNode* given() const { return std::get_if<GivenNode>(&node_); }
  const UnknownNode* unknown() const {
    return std::get_if<UnknownNode>(&node_);
  }

 private:
  Node node_;
};

ExprPtr make_constant(Rational value);
ExprPtr make_given(int index);
ExprPtr make_unknown(int index);
ExprPtr make_binary(BinaryOp op, ExprPtr left, ExprPtr right);

/// Structural equality; constants compare exactly as reduced rationals.
bool equal(const ExprPtr& a, const ExprPtr& b);

struct Equation {
  ExprPtr lhs;
  ExprPtr rhs;
};
bool equal(const Equation& a, const Equation& b);

/// Ordered, non-empty list of simultaneous equations.
struct EquationSet {
  std::vector<Equation> equations;
};
bool equal(const EquationSet& a, const EquationSet& b);

/// Universal expression tree: a dummy head whose children are the equation
/// trees, so multi-equation problems serialize as one sequence.
struct UetTree {
  static constexpr std::string_view kHeadToken{"<UET>"};
  std::vector<Equation> children;
};

UetTree uet_from_set(const EquationSet& set);
EquationSet set_from_uet(const UetTree& tree);

/// Pre-order serialization: [<UET>, =, lhs-prefix, rhs-prefix, ...] with one
/// "=" introducing each equation.
std::vector<std::string> prefix_tokens(const UetTree& tree);
std::string prefix_string(const UetTree& tree);

void append_prefix_tokens(const ExprPtr& e, std::vector<std::string>& out);
std::string expr_prefix_string(const ExprPtr& e);

/// Raised by parse_prefix; position is the 0-based index of the offending
/// token (or one past the end when tokens ran out).
class MalformedPrefixError : public std::runtime_error {
 public:
  MalformedPrefixError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

UetTree parse_prefix(const std::vector<std::string>& tokens);
UetTree parse_prefix_string(std::string_view text);  // whitespace-separated

int max_given_index(const ExprPtr& e);
int max_given_index(const EquationSet& set);
int max_unknown_index(const ExprPtr& e);
int max_unknown_index(const EquationSet& set);
int count_unknown(const ExprPtr& e, int index);
int count_unknown(const Equation& eq, int index);
bool contains_unknown(const ExprPtr& e, int index);
std::set<int> given_indices(const EquationSet& set);
std::set<int> unknown_indices(const EquationSet& set);

ExprPtr map_unknown_indices(const ExprPtr& e,
                            const std::function<int(int)>& fn);
EquationSet map_unknown_indices(const EquationSet& set,
                                const std::function<int(int)>& fn);

/// Well-formedness checks shared by the pipeline and the CLI: non-empty set,
/// at least one unknown per equation, unknown indices exactly {1..m}.
std::vector<std::string> validate(const EquationSet& set);

}  // namespace mwpaug
