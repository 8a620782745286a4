/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mwpaug/ast.hpp"

namespace mwpaug {

enum class ParseErrorKind {
  UnexpectedToken,
  UnbalancedParen,
  EmptyExpression,
  UnknownSymbol,
  MissingEquals,
};

std::string_view parse_error_kind_name(ParseErrorKind kind);

/// Parse failure with a byte offset into the input (0 <= position <= length).
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position,
             const std::string& detail);
  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

/// Parses "lhs = rhs" over +, -, *, /, ^ with the usual precedence
/// (^ binds tightest and associates right; *,/ next; +,- last, both
/// left-associative). Unary minus desugars to (0 - operand). Variable
/// spellings "n1"/"n_1" and "x1"/"x_1" are both accepted.
/// Total: every input yields an Equation or throws ParseError.
Equation parse_equation(std::string_view text);

/// Single expression, no "=" allowed.
ExprPtr parse_expression(std::string_view text);

/// Minimal-parentheses rendering. Structure-faithful: re-parsing the output
/// reproduces the tree exactly, so value-safe regroupings still print their
/// parentheses ("n_3 + (n_2 + n_1)" keeps its parens). (0 - e) prints as
/// "-e" where the grammar re-reads it the same way.
std::string print_infix(const ExprPtr& e);
std::string print_infix(const Equation& eq);

}  // namespace mwpaug
