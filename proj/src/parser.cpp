/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace mwpaug {

namespace {

// Binding powers: +,- (10/11), *,/ (20/21), unary minus operand (25),
// ^ (30/30, right-associative).
constexpr int kAddBp = 10;
constexpr int kMulBp = 20;
constexpr int kUnaryBp = 25;
constexpr int kPowBp = 30;

struct Token {
  enum class Kind {
    Number,
    Given,
    Unknown,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    End,
  };
  Kind kind;
  std::size_t pos;
  Rational value;  // Number
  int index = 0;   // Given / Unknown
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '+': out.push_back({Token::Kind::Plus, start, {}, 0}); ++i; continue;
      case '-': out.push_back({Token::Kind::Minus, start, {}, 0}); ++i; continue;
      case '*': out.push_back({Token::Kind::Star, start, {}, 0}); ++i; continue;
      case '/': out.push_back({Token::Kind::Slash, start, {}, 0}); ++i; continue;
      case '^': out.push_back({Token::Kind::Caret, start, {}, 0}); ++i; continue;
      case '(': out.push_back({Token::Kind::LParen, start, {}, 0}); ++i; continue;
      case ')': out.push_back({Token::Kind::RParen, start, {}, 0}); ++i; continue;
      case '=': out.push_back({Token::Kind::Equals, start, {}, 0}); ++i; continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < n && text[j] == '.' && j + 1 < n &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      auto value = Rational::from_decimal(text.substr(i, j - i));
      if (!value)
        throw ParseError(ParseErrorKind::UnexpectedToken, start,
                         "numeric literal out of range");
      out.push_back({Token::Kind::Number, start, *value, 0});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && is_ident_char(text[j])) ++j;
      const std::string_view ident = text.substr(i, j - i);
      // Accepted shapes: n<k>, n_<k>, x<k>, x_<k> with k >= 1.
      const char head = ident[0];
      if ((head == 'n' || head == 'x') && ident.size() >= 2) {
        std::size_t d = 1;
        if (ident[d] == '_') ++d;
        long idx = 0;
        bool digits = d < ident.size();
        for (std::size_t k = d; k < ident.size(); ++k) {
          if (!std::isdigit(static_cast<unsigned char>(ident[k]))) {
            digits = false;
            break;
          }
          idx = idx * 10 + (ident[k] - '0');
          if (idx > 1'000'000) {
            digits = false;
            break;
          }
        }
        if (digits && idx >= 1) {
          out.push_back({head == 'n' ? Token::Kind::Given : Token::Kind::Unknown,
                         start,
                         {},
                         static_cast<int>(idx)});
          i = j;
          continue;
        }
      }
      throw ParseError(ParseErrorKind::UnknownSymbol, start,
                       "unknown symbol '" + std::string(ident) + "'");
    }
    throw ParseError(ParseErrorKind::UnexpectedToken, start,
                     std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::End, n, {}, 0});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_full_expression() {
    ExprPtr e = parse_expr(0);
    expect_end();
    return e;
  }

  Equation parse_full_equation() {
    ExprPtr lhs = parse_expr(0);
    const Token& t = peek();
    if (t.kind == Token::Kind::End)
      throw ParseError(ParseErrorKind::MissingEquals, t.pos,
                       "expected '=' between two expressions");
    if (t.kind != Token::Kind::Equals) unexpected(t);
    ++i_;
    ExprPtr rhs = parse_expr(0);
    expect_end();
    return Equation{std::move(lhs), std::move(rhs)};
  }

 private:
  const Token& peek() const { return tokens_[i_]; }

  [[noreturn]] void unexpected(const Token& t) const {
    if (t.kind == Token::Kind::RParen)
      throw ParseError(ParseErrorKind::UnbalancedParen, t.pos,
                       "unmatched ')'");
    throw ParseError(ParseErrorKind::UnexpectedToken, t.pos,
                     "unexpected token");
  }

  void expect_end() const {
    const Token& t = peek();
    if (t.kind != Token::Kind::End) unexpected(t);
  }

  ExprPtr parse_operand() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number:
        ++i_;
        return make_constant(t.value);
      case Token::Kind::Given:
        ++i_;
        return make_given(t.index);
      case Token::Kind::Unknown:
        ++i_;
        return make_unknown(t.index);
      case Token::Kind::Minus: {
        ++i_;
        ExprPtr operand = parse_expr(kUnaryBp);
        return make_binary(BinaryOp::Sub, make_constant(Rational(0, 1)),
                           std::move(operand));
      }
      case Token::Kind::LParen: {
        const std::size_t open = t.pos;
        ++i_;
        ExprPtr inner = parse_expr(0);
        if (peek().kind != Token::Kind::RParen)
          throw ParseError(ParseErrorKind::UnbalancedParen, open,
                           "'(' is never closed");
        ++i_;
        return inner;
      }
      case Token::Kind::End:
      case Token::Kind::Equals:
      case Token::Kind::RParen:
        throw ParseError(ParseErrorKind::EmptyExpression, t.pos,
                         "expected an expression");
      default:
        unexpected(t);
    }
  }

  static int left_bp(Token::Kind k) {
    switch (k) {
      case Token::Kind::Plus:
      case Token::Kind::Minus: return kAddBp;
      case Token::Kind::Star:
      case Token::Kind::Slash: return kMulBp;
      case Token::Kind::Caret: return kPowBp;
      default: return 0;
    }
  }

  static BinaryOp op_of(Token::Kind k) {
    switch (k) {
      case Token::Kind::Plus: return BinaryOp::Add;
      case Token::Kind::Minus: return BinaryOp::Sub;
      case Token::Kind::Star: return BinaryOp::Mul;
      case Token::Kind::Slash: return BinaryOp::Div;
      default: return BinaryOp::Pow;
    }
  }

  ExprPtr parse_expr(int min_bp) {
    ExprPtr lhs = parse_operand();
    for (;;) {
      const Token& t = peek();
      const int bp = left_bp(t.kind);
      if (bp == 0 || bp < min_bp) break;
      const BinaryOp op = op_of(t.kind);
      ++i_;
      // Left-associative operators parse their right side one level
      // tighter; '^' re-enters at its own level and associates right.
      const int rbp = op == BinaryOp::Pow ? kPowBp : bp + 1;
      ExprPtr rhs = parse_expr(rbp);
      lhs = make_binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

int prec_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAddBp;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kMulBp;
    case BinaryOp::Pow: return kPowBp;
  }
  return 0;
}

bool is_unary_minus(const ExprPtr& e) {
  const BinaryNode* b = e->binary();
  if (!b || b->op != BinaryOp::Sub) return false;
  const ConstantNode* c = b->left->constant();
  return c && c->value.is_zero();
}

// Precedence a subexpression carries once printed: leaves bind like atoms,
// "-e" sits between '*' and '^'.
int printed_prec(const ExprPtr& e) {
  if (is_unary_minus(e)) return kUnaryBp;
  if (const BinaryNode* b = e->binary()) return prec_of(b->op);
  return 100;
}

void print_expr(const ExprPtr& e, std::string& out) {
  if (is_unary_minus(e)) {
    const ExprPtr& operand = e->binary()->right;
    out += '-';
    const bool parens = printed_prec(operand) < kUnaryBp;
    if (parens) out += '(';
    print_expr(operand, out);
    if (parens) out += ')';
    return;
  }
  const BinaryNode* b = e->binary();
  if (!b) {
    if (const ConstantNode* c = e->constant()) {
      out += c->value.to_decimal();
    } else if (const GivenNode* g = e->given()) {
      out += "n_" + std::to_string(g->index);
    } else {
      out += "x_" + std::to_string(e->unknown()->index);
    }
    return;
  }
  const int prec = prec_of(b->op);
  const int lp = printed_prec(b->left);
  const bool left_parens =
      lp < prec || (lp == prec && b->op == BinaryOp::Pow);
  // A unary minus on the right re-reads as a prefix operand; it never
  // needs parentheses there.
  const int rp = printed_prec(b->right);
  const bool right_parens =
      !is_unary_minus(b->right) &&
      (rp < prec || (rp == prec && b->op != BinaryOp::Pow));
  if (left_parens) out += '(';
  print_expr(b->left, out);
  if (left_parens) out += ')';
  out += ' ';
  out += op_token(b->op);
  out += ' ';
  if (right_parens) out += '(';
  print_expr(b->right, out);
  if (right_parens) out += ')';
}

}  // namespace

std::string_view parse_error_kind_name(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ParseErrorKind::EmptyExpression: return "EmptyExpression";
    case ParseErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ParseErrorKind::MissingEquals: return "MissingEquals";
  }
  return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t position,
                       const std::string& detail)
    : std::runtime_error("offset " + std::to_string(position) + ": " + detail +
                         " [" + std::string(parse_error_kind_name(kind)) + "]"),
      kind_(kind),
      position_(position) {}

Equation parse_equation(std::string_view text) {
  return Parser(lex(text)).parse_full_equation();
}

ExprPtr parse_expression(std::string_view text) {
  return Parser(lex(text)).parse_full_expression();
}

std::string print_infix(const ExprPtr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

std::string print_infix(const Equation& eq) {
  std::string out;
  print_expr(eq.lhs, out);
  out += " = ";
  print_expr(eq.rhs, out);
  return out;
}

}  // namespace mwpaug
