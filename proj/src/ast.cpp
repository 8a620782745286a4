/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The mwpaug authors
 */
#include "mwpaug/ast.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace mwpaug {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<BinaryOp> op_from_token(std::string_view t) {
  if (t == "+") return BinaryOp::Add;
  if (t == "-") return BinaryOp::Sub;
  if (t == "*") return BinaryOp::Mul;
  if (t == "/") return BinaryOp::Div;
  if (t == "^") return BinaryOp::Pow;
  return std::nullopt;
}

// "n_3" / "x_2" -> index; strict underscore spelling, index >= 1.
std::optional<int> var_index(std::string_view t, char prefix) {
  if (t.size() < 3 || t[0] != prefix || t[1] != '_') return std::nullopt;
  long value = 0;
  for (std::size_t i = 2; i < t.size(); ++i) {
    const char c = t[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 1'000'000) return std::nullopt;
  }
  if (value < 1) return std::nullopt;
  return static_cast<int>(value);
}

void walk(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
  fn(*e);
  if (const BinaryNode* b = e->binary()) {
    walk(b->left, fn);
    walk(b->right, fn);
  }
}

}  // namespace

std::string_view op_token(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
  }
  return "?";
}

ExprPtr make_constant(Rational value) {
  return std::make_shared<const Expr>(ConstantNode{std::move(value)});
}

ExprPtr make_given(int index) {
  if (index < 1) throw std::invalid_argument("given index must be >= 1");
  return std::make_shared<const Expr>(GivenNode{index});
}

ExprPtr make_unknown(int index) {
  if (index < 1) throw std::invalid_argument("unknown index must be >= 1");
  return std::make_shared<const Expr>(UnknownNode{index});
}

ExprPtr make_binary(BinaryOp op, ExprPtr left, ExprPtr right) {
  return std::make_shared<const Expr>(
      BinaryNode{op, std::move(left), std::move(right)});
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return std::visit(
      Overloaded{
          [&](const ConstantNode& x) {
            const ConstantNode* y = b->constant();
            return y && x.value == y->value;
          },
          [&](const GivenNode& x) {
            const GivenNode* y = b->given();
            return y && x.index == y->index;
          },
          [&](const UnknownNode& x) {
            const UnknownNode* y = b->unknown();
            return y && x.index == y->index;
          },
          [&](const BinaryNode& x) {
            const BinaryNode* y = b->binary();
            return y && x.op == y->op && equal(x.left, y->left) &&
                   equal(x.right, y->right);
          },
      },
      a->node());
}

bool equal(const Equation& a, const Equation& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

bool equal(const EquationSet& a, const EquationSet& b) {
  if (a.equations.size() != b.equations.size()) return false;
  for (std::size_t i = 0; i < a.equations.size(); ++i)
    if (!equal(a.equations[i], b.equations[i])) return false;
  return true;
}

UetTree uet_from_set(const EquationSet& set) { return UetTree{set.equations}; }

EquationSet set_from_uet(const UetTree& tree) {
  return EquationSet{tree.children};
}

void append_prefix_tokens(const ExprPtr& e, std::vector<std::string>& out) {
  std::visit(Overloaded{
                 [&](const ConstantNode& n) { out.push_back(n.value.to_decimal()); },
                 [&](const GivenNode& n) {
                   out.push_back("n_" + std::to_string(n.index));
                 },
                 [&](const UnknownNode& n) {
                   out.push_back("x_" + std::to_string(n.index));
                 },
                 [&](const BinaryNode& n) {
                   out.emplace_back(op_token(n.op));
                   append_prefix_tokens(n.left, out);
                   append_prefix_tokens(n.right, out);
                 },
             },
             e->node());
}

std::string expr_prefix_string(const ExprPtr& e) {
  std::vector<std::string> toks;
  append_prefix_tokens(e, toks);
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ' ';
    out += toks[i];
  }
  return out;
}

std::vector<std::string> prefix_tokens(const UetTree& tree) {
  std::vector<std::string> out;
  out.emplace_back(UetTree::kHeadToken);
  for (const Equation& eq : tree.children) {
    out.emplace_back("=");
    append_prefix_tokens(eq.lhs, out);
    append_prefix_tokens(eq.rhs, out);
  }
  return out;
}

std::string prefix_string(const UetTree& tree) {
  const std::vector<std::string> toks = prefix_tokens(tree);
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) out += ' ';
    out += toks[i];
  }
  return out;
}

UetTree parse_prefix(const std::vector<std::string>& tokens) {
  std::size_t pos = 0;

  std::function<ExprPtr()> parse_expr = [&]() -> ExprPtr {
    if (pos >= tokens.size())
      throw MalformedPrefixError(pos, "operand missing: token stream ended");
    const std::string& t = tokens[pos];
    if (auto op = op_from_token(t)) {
      ++pos;
      ExprPtr left = parse_expr();
      ExprPtr right = parse_expr();
      return make_binary(*op, std::move(left), std::move(right));
    }
    if (t == "=" || t == UetTree::kHeadToken)
      throw MalformedPrefixError(pos, "'" + t + "' not allowed inside an expression");
    if (auto idx = var_index(t, 'n')) {
      ++pos;
      return make_given(*idx);
    }
    if (auto idx = var_index(t, 'x')) {
      ++pos;
      return make_unknown(*idx);
    }
    if (auto value = Rational::from_decimal(t)) {
      ++pos;
      return make_constant(*value);
    }
    throw MalformedPrefixError(pos, "unrecognized token '" + t + "'");
  };

  if (pos >= tokens.size() || tokens[pos] != UetTree::kHeadToken)
    throw MalformedPrefixError(pos, "expected head token <UET>");
  ++pos;

  UetTree tree;
  while (pos < tokens.size()) {
    if (tokens[pos] != "=")
      throw MalformedPrefixError(pos, "expected '=' to start an equation");
    ++pos;
    ExprPtr lhs = parse_expr();
    ExprPtr rhs = parse_expr();
    tree.children.push_back(Equation{std::move(lhs), std::move(rhs)});
  }
  if (tree.children.empty())
    throw MalformedPrefixError(pos, "no equations after head token");
  return tree;
}

UetTree parse_prefix_string(std::string_view text) {
  std::vector<std::string> toks;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return parse_prefix(toks);
}

int max_given_index(const ExprPtr& e) {
  int out = 0;
  walk(e, [&](const Expr& n) {
    if (const GivenNode* g = n.given()) out = std::max(out, g->index);
  });
  return out;
}

int max_given_index(const EquationSet& set) {
  int out = 0;
  for (const Equation& eq : set.equations)
    out = std::max({out, max_given_index(eq.lhs), max_given_index(eq.rhs)});
  return out;
}

int max_unknown_index(const ExprPtr& e) {
  int out = 0;
  walk(e, [&](const Expr& n) {
    if (const UnknownNode* u = n.unknown()) out = std::max(out, u->index);
  });
  return out;
}

int max_unknown_index(const EquationSet& set) {
  int out = 0;
  for (const Equation& eq : set.equations)
    out = std::max({out, max_unknown_index(eq.lhs), max_unknown_index(eq.rhs)});
  return out;
}

int count_unknown(const ExprPtr& e, int index) {
  int out = 0;
  walk(e, [&](const Expr& n) {
    if (const UnknownNode* u = n.unknown())
      if (u->index == index) ++out;
  });
  return out;
}

int count_unknown(const Equation& eq, int index) {
  return count_unknown(eq.lhs, index) + count_unknown(eq.rhs, index);
}

bool contains_unknown(const ExprPtr& e, int index) {
  return count_unknown(e, index) > 0;
}

std::set<int> given_indices(const EquationSet& set) {
  std::set<int> out;
  for (const Equation& eq : set.equations)
    for (const ExprPtr& side : {eq.lhs, eq.rhs})
      walk(side, [&](const Expr& n) {
        if (const GivenNode* g = n.given()) out.insert(g->index);
      });
  return out;
}

std::set<int> unknown_indices(const EquationSet& set) {
  std::set<int> out;
  for (const Equation& eq : set.equations)
    for (const ExprPtr& side : {eq.lhs, eq.rhs})
      walk(side, [&](const Expr& n) {
        if (const UnknownNode* u = n.unknown()) out.insert(u->index);
      });
  return out;
}

ExprPtr map_unknown_indices(const ExprPtr& e,
                            const std::function<int(int)>& fn) {
  return std::visit(
      Overloaded{
          [&](const ConstantNode&) { return e; },
          [&](const GivenNode&) { return e; },
          [&](const UnknownNode& n) { return make_unknown(fn(n.index)); },
          [&](const BinaryNode& n) {
            ExprPtr left = map_unknown_indices(n.left, fn);
            ExprPtr right = map_unknown_indices(n.right, fn);
            return make_binary(n.op, std::move(left), std::move(right));
          },
      },
      e->node());
}

EquationSet map_unknown_indices(const EquationSet& set,
                                const std::function<int(int)>& fn) {
  EquationSet out;
  out.equations.reserve(set.equations.size());
  for (const Equation& eq : set.equations)
    out.equations.push_back(Equation{map_unknown_indices(eq.lhs, fn),
                                     map_unknown_indices(eq.rhs, fn)});
  return out;
}

std::vector<std::string> validate(const EquationSet& set) {
  std::vector<std::string> issues;
  if (set.equations.empty()) {
    issues.emplace_back("equation set is empty");
    return issues;
  }
  for (std::size_t i = 0; i < set.equations.size(); ++i) {
    const Equation& eq = set.equations[i];
    if (max_unknown_index(eq.lhs) == 0 && max_unknown_index(eq.rhs) == 0)
      issues.push_back("equation " + std::to_string(i + 1) +
                       " contains no unknown variable");
  }
  const std::set<int> unknowns = unknown_indices(set);
  if (!unknowns.empty()) {
    const int m = *unknowns.rbegin();
    for (int j = 1; j <= m; ++j)
      if (!unknowns.count(j))
        issues.push_back("unknown indices are not contiguous: missing x_" +
                         std::to_string(j));
  }
  return issues;
}

}  // namespace mwpaug
