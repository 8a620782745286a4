/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/parser.hpp"

#include <random>
#include <string>

#include "doctest.h"
#include "mwpaug/ast.hpp"
#include "support/generators.hpp"

using namespace mwpaug;

namespace {

std::string prefix_of(const std::string& text) {
  return expr_prefix_string(parse_expression(text));
}

struct Failure {
  ParseErrorKind kind;
  std::size_t position;
};

Failure equation_failure(const std::string& text) {
  try {
    parse_equation(text);
  } catch (const ParseError& e) {
    return {e.kind(), e.position()};
  }
  FAIL("expected ParseError for: " << text);
  return {ParseErrorKind::UnexpectedToken, 0};
}

}  // namespace

TEST_CASE("precedence and associativity shape the tree") {
  CHECK(prefix_of("n_1 + n_2 * n_3") == "+ n_1 * n_2 n_3");
  CHECK(prefix_of("n_1 - n_2 - n_3") == "- - n_1 n_2 n_3");
  CHECK(prefix_of("n_1 / n_2 / n_3") == "/ / n_1 n_2 n_3");
  CHECK(prefix_of("n_1 ^ n_2 ^ n_3") == "^ n_1 ^ n_2 n_3");
  CHECK(prefix_of("(n_1 + n_2) * n_3") == "* + n_1 n_2 n_3");
  CHECK(prefix_of("n_1 * n_2 + n_3 / n_4") == "+ * n_1 n_2 / n_3 n_4");
  CHECK(prefix_of("n_1 ^ 2 * n_2") == "* ^ n_1 2 n_2");
}

TEST_CASE("unary minus reads as zero-minus") {
  CHECK(prefix_of("-n_1 + n_2") == "+ - 0 n_1 n_2");
  CHECK(prefix_of("-n_1 ^ 2") == "- 0 ^ n_1 2");
  CHECK(prefix_of("n_1 * -n_2") == "* n_1 - 0 n_2");
  CHECK(prefix_of("-(n_1 + n_2)") == "- 0 + n_1 n_2");
  CHECK(prefix_of("--n_1") == "- 0 - 0 n_1");
}

TEST_CASE("both variable spellings parse, output is canonical") {
  const Equation eq = parse_equation("x1 = n1 + n_2");
  CHECK(print_infix(eq) == "x_1 = n_1 + n_2");
  CHECK(equal(eq, parse_equation("x_1 = n_1 + n2")));
}

TEST_CASE("decimals keep their exact value") {
  CHECK(prefix_of("0.50 + 2") == "+ 0.5 2");
  CHECK(print_infix(parse_expression("12.25")) == "12.25");
}

TEST_CASE("parse failures carry kind and byte offset") {
  const auto check = [](const std::string& text, ParseErrorKind kind,
                        std::size_t position) {
    const Failure f = equation_failure(text);
    CHECK_MESSAGE(f.kind == kind, text << " -> "
                                       << parse_error_kind_name(f.kind));
    CHECK_MESSAGE(f.position == position, text << " -> " << f.position);
  };
  check("x_1 + n_1", ParseErrorKind::MissingEquals, 9);
  check("x_1 = (n_1 + n_2", ParseErrorKind::UnbalancedParen, 6);
  check("x_1 = n_1)", ParseErrorKind::UnbalancedParen, 9);
  check("x_1 = ", ParseErrorKind::EmptyExpression, 6);
  check("", ParseErrorKind::EmptyExpression, 0);
  check("x_1 = foo + 2", ParseErrorKind::UnknownSymbol, 6);
  check("x_1 = n_0", ParseErrorKind::UnknownSymbol, 6);
  check("x_1 = n_1 + + n_2", ParseErrorKind::UnexpectedToken, 12);
  check("x_1 = n_1 = n_2", ParseErrorKind::UnexpectedToken, 10);
}

TEST_CASE("implicit multiplication and stray symbols are rejected") {
  const auto kind_of = [](const std::string& text) {
    return equation_failure(text).kind;
  };
  CHECK(kind_of("x_1 = 5 n_1") == ParseErrorKind::UnexpectedToken);
  CHECK(kind_of("x_1 = n_1 n_2") == ParseErrorKind::UnexpectedToken);
  CHECK(kind_of("x_1 = 20%") == ParseErrorKind::UnexpectedToken);
  CHECK(kind_of("x_1 = $5") == ParseErrorKind::UnexpectedToken);
  CHECK(kind_of("x_1 = 3(n_1)") == ParseErrorKind::UnexpectedToken);
}

TEST_CASE("parse_expression rejects equations") {
  try {
    parse_expression("n_1 = n_2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseErrorKind::UnexpectedToken);
    CHECK(e.position() == 4);
  }
}

TEST_CASE("printing preserves structure, not just value") {
  CHECK(print_infix(parse_expression("n_3 + (n_2 + n_1)")) ==
        "n_3 + (n_2 + n_1)");
  CHECK(print_infix(parse_expression("(n_1 + n_2) + n_3")) ==
        "n_1 + n_2 + n_3");
  CHECK(print_infix(parse_expression("n_1 / (n_2 / n_3)")) ==
        "n_1 / (n_2 / n_3)");
  CHECK(print_infix(parse_expression("(n_1 ^ n_2) ^ n_3")) ==
        "(n_1 ^ n_2) ^ n_3");
  CHECK(print_infix(parse_expression("n_1 ^ n_2 ^ n_3")) ==
        "n_1 ^ n_2 ^ n_3");
  CHECK(print_infix(parse_expression("n_1 * (n_2 + n_3)")) ==
        "n_1 * (n_2 + n_3)");
  CHECK(print_infix(parse_expression("-n_1 ^ 2")) == "-n_1 ^ 2");
  CHECK(print_infix(parse_expression("(-n_1) ^ 2")) == "(-n_1) ^ 2");
  CHECK(print_infix(parse_expression("n_1 - -n_2")) == "n_1 - -n_2");
}

TEST_CASE("parse of print is the identity on random trees") {
  std::mt19937_64 rng(41);
  testing::GenOptions opts;
  opts.allow_pow = true;
  for (int i = 0; i < 1000; ++i) {
    const ExprPtr e = testing::random_expr(rng, opts);
    const std::string text = print_infix(e);
    const ExprPtr back = parse_expression(text);
    CHECK_MESSAGE(equal(back, e), text);
    // Printing the re-parsed tree is a fixed point.
    CHECK(print_infix(back) == text);
  }
}

TEST_CASE("equation round-trip on random sets") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 300; ++i) {
    const EquationSet set = testing::random_set(rng);
    for (const Equation& eq : set.equations) {
      const Equation back = parse_equation(print_infix(eq));
      CHECK(equal(back, eq));
    }
  }
}

TEST_CASE("the parser is total over byte noise") {
  std::mt19937_64 rng(97);
  const std::string alphabet = "nx_123+-*/^()= .%$ab";
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const int len =
        std::uniform_int_distribution<int>(0, 24)(rng);
    for (int k = 0; k < len; ++k)
      text += alphabet[std::uniform_int_distribution<std::size_t>(
          0, alphabet.size() - 1)(rng)];
    try {
      const Equation eq = parse_equation(text);
      // Whatever parses must re-print and re-parse stably.
      CHECK(equal(parse_equation(print_infix(eq)), eq));
    } catch (const ParseError& e) {
      CHECK(e.position() <= text.size());
    }
  }
}
