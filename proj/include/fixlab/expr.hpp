#pragma once
// Arithmetic expression language used to define operators and integral
// kernels, including the piecewise (if/then/else) form.
//
//   expr  := cond | sum
//   cond  := "if" sum CMP sum "then" expr "else" expr
//   sum   := prod (("+" | "-") prod)*
//   prod  := unary (("*" | "/") unary)*
//   unary := "-" unary | pow
//   pow   := atom ("^" unary)?
//   atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//   CMP   := "<" | "<=" | ">" | ">=" | "=="
//
// "^" is right-associative and binds tighter than unary minus. Built-in
// calls: exp and abs take one argument, min and max take two. A conditional
// evaluates exactly one branch, so the untaken branch may contain a would-be
// domain error.

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fixlab/metric.hpp"

namespace fixlab::expr {

struct SyntaxError : std::runtime_error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)),
        position(pos) {}
};

/// Unbound variable during evaluation.
struct NameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arithmetic left the reals: division by zero, invalid power, or a
/// non-finite intermediate value (non_finite distinguishes the last case).
struct EvalDomainError : std::runtime_error {
  bool non_finite;
  explicit EvalDomainError(const std::string& msg, bool nf = false)
      : std::runtime_error(msg), non_finite(nf) {}
};

enum class TokenKind { Number, Identifier, Operator, Keyword, Paren, Comma };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position;  // byte offset into the source
};

inline std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  const std::size_t n = source.size();
  std::size_t i = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)); };
  auto is_ident_start = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto is_ident = [&](char c) { return is_ident_start(c) || is_digit(c); };

  while (i < n) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < n && is_digit(source[i])) ++i;
      if (i < n && source[i] == '.' && i + 1 < n && is_digit(source[i + 1])) {
        ++i;
        while (i < n && is_digit(source[i])) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < n && is_digit(source[j])) {
          i = j;
          while (i < n && is_digit(source[i])) ++i;
        }
      }
      out.push_back({TokenKind::Number, std::string(source.substr(start, i - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident(source[i])) ++i;
      std::string lexeme(source.substr(start, i - start));
      TokenKind kind = (lexeme == "if" || lexeme == "then" || lexeme == "else")
                           ? TokenKind::Keyword
                           : TokenKind::Identifier;
      out.push_back({kind, std::move(lexeme), start});
      continue;
    }
    switch (c) {
      case '+': case '-': case '*': case '/': case '^':
        out.push_back({TokenKind::Operator, std::string(1, c), start});
        ++i;
        break;
      case '<': case '>':
        if (i + 1 < n && source[i + 1] == '=') {
          out.push_back({TokenKind::Operator, std::string(source.substr(start, 2)), start});
          i += 2;
        } else {
          out.push_back({TokenKind::Operator, std::string(1, c), start});
          ++i;
        }
        break;
      case '=':
        if (i + 1 < n && source[i + 1] == '=') {
          out.push_back({TokenKind::Operator, "==", start});
          i += 2;
        } else {
          throw SyntaxError("expected '=='", start);
        }
        break;
      case '(': case ')':
        out.push_back({TokenKind::Paren, std::string(1, c), start});
        ++i;
        break;
      case ',':
        out.push_back({TokenKind::Comma, ",", start});
        ++i;
        break;
      default:
        throw SyntaxError(std::string("illegal character '") + c + "'", start);
    }
  }
  return out;
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { Add, Subtract, Multiply, Divide, Power };
enum class Builtin { Exp, Abs, Min, Max };
enum class Comparison { Less, LessEqual, Greater, GreaterEqual, Equal };

struct Literal {
  double value;
};
struct Variable {
  std::string name;
};
struct Negate {
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr left, right;
};
struct Call {
  Builtin fn;
  std::vector<ExprPtr> args;
};
struct Conditional {
  Comparison cmp;
  ExprPtr left, right, then_branch, else_branch;
};

struct Expr {
  std::variant<Literal, Variable, Negate, Binary, Call, Conditional> node;
};

inline ExprPtr literal(double v) { return std::make_shared<Expr>(Expr{Literal{v}}); }
inline ExprPtr variable(std::string name) {
  return std::make_shared<Expr>(Expr{Variable{std::move(name)}});
}
inline ExprPtr negate(ExprPtr e) { return std::make_shared<Expr>(Expr{Negate{std::move(e)}}); }
inline ExprPtr binary(BinaryOp op, ExprPtr l, ExprPtr r) {
  return std::make_shared<Expr>(Expr{Binary{op, std::move(l), std::move(r)}});
}
inline ExprPtr call(Builtin fn, std::vector<ExprPtr> args) {
  return std::make_shared<Expr>(Expr{Call{fn, std::move(args)}});
}
inline ExprPtr conditional(Comparison cmp, ExprPtr l, ExprPtr r, ExprPtr t, ExprPtr e) {
  return std::make_shared<Expr>(
      Expr{Conditional{cmp, std::move(l), std::move(r), std::move(t), std::move(e)}});
}

namespace detail {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (pos_ < toks_.size()) {
      fail("unexpected token '" + toks_[pos_].lexeme + "'", toks_[pos_].position);
    }
    return e;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw SyntaxError(msg, at);
  }

  std::size_t end_position() const {
    if (toks_.empty()) return 0;
    const Token& t = toks_.back();
    return t.position + t.lexeme.size();
  }

  const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }

  const Token& advance() {
    if (pos_ >= toks_.size()) fail("unexpected end of input", end_position());
    return toks_[pos_++];
  }

  bool at_operator(std::string_view sym) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::Operator && t->lexeme == sym;
  }

  bool at_keyword(std::string_view kw) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::Keyword && t->lexeme == kw;
  }

  bool at_paren(char c) const {
    const Token* t = peek();
    return t && t->kind == TokenKind::Paren && t->lexeme[0] == c;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      const Token* t = peek();
      fail("expected '" + std::string(kw) + "'", t ? t->position : end_position());
    }
    ++pos_;
  }

  void expect_paren(char c) {
    if (!at_paren(c)) {
      const Token* t = peek();
      fail(std::string("expected '") + c + "'", t ? t->position : end_position());
    }
    ++pos_;
  }

  ExprPtr parse_expr() {
    if (at_keyword("if")) return parse_conditional();
    return parse_sum();
  }

  ExprPtr parse_conditional() {
    ++pos_;  // "if"
    ExprPtr left = parse_sum();
    Comparison cmp = parse_comparison();
    ExprPtr right = parse_sum();
    expect_keyword("then");
    ExprPtr then_branch = parse_expr();
    expect_keyword("else");
    ExprPtr else_branch = parse_expr();
    return conditional(cmp, std::move(left), std::move(right), std::move(then_branch),
                       std::move(else_branch));
  }

  Comparison parse_comparison() {
    const Token* t = peek();
    if (t && t->kind == TokenKind::Operator) {
      ++pos_;
      if (t->lexeme == "<") return Comparison::Less;
      if (t->lexeme == "<=") return Comparison::LessEqual;
      if (t->lexeme == ">") return Comparison::Greater;
      if (t->lexeme == ">=") return Comparison::GreaterEqual;
      if (t->lexeme == "==") return Comparison::Equal;
      fail("expected a comparison operator", t->position);
    }
    fail("expected a comparison operator", t ? t->position : end_position());
  }

  ExprPtr parse_sum() {
    ExprPtr lhs = parse_prod();
    while (at_operator("+") || at_operator("-")) {
      BinaryOp op = toks_[pos_].lexeme == "+" ? BinaryOp::Add : BinaryOp::Subtract;
      ++pos_;
      lhs = binary(op, std::move(lhs), parse_prod());
    }
    return lhs;
  }

  ExprPtr parse_prod() {
    ExprPtr lhs = parse_unary();
    while (at_operator("*") || at_operator("/")) {
      BinaryOp op = toks_[pos_].lexeme == "*" ? BinaryOp::Multiply : BinaryOp::Divide;
      ++pos_;
      lhs = binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at_operator("-")) {
      ++pos_;
      return negate(parse_unary());
    }
    return parse_pow();
  }

  ExprPtr parse_pow() {
    ExprPtr base = parse_atom();
    if (at_operator("^")) {
      ++pos_;
      return binary(BinaryOp::Power, std::move(base), parse_unary());
    }
    return base;
  }

  ExprPtr parse_atom() {
    const Token* t = peek();
    if (!t) fail("unexpected end of input", end_position());
    switch (t->kind) {
      case TokenKind::Number: {
        ++pos_;
        double value = 0;
        auto res = std::from_chars(t->lexeme.data(), t->lexeme.data() + t->lexeme.size(), value);
        if (res.ec != std::errc{} || !std::isfinite(value)) {
          fail("number out of range", t->position);
        }
        return literal(value);
      }
      case TokenKind::Identifier: {
        ++pos_;
        if (at_paren('(')) return parse_call(*t);
        return variable(t->lexeme);
      }
      case TokenKind::Paren:
        if (t->lexeme == "(") {
          ++pos_;
          ExprPtr inner = parse_expr();
          expect_paren(')');
          return inner;
        }
        fail("unexpected ')'", t->position);
      default:
        fail("unexpected token '" + t->lexeme + "'", t->position);
    }
  }

  ExprPtr parse_call(const Token& name) {
    Builtin fn;
    std::size_t arity;
    if (name.lexeme == "exp") {
      fn = Builtin::Exp;
      arity = 1;
    } else if (name.lexeme == "abs") {
      fn = Builtin::Abs;
      arity = 1;
    } else if (name.lexeme == "min") {
      fn = Builtin::Min;
      arity = 2;
    } else if (name.lexeme == "max") {
      fn = Builtin::Max;
      arity = 2;
    } else {
      fail("unknown function '" + name.lexeme + "'", name.position);
    }
    expect_paren('(');
    std::vector<ExprPtr> args;
    args.push_back(parse_expr());
    while (peek() && peek()->kind == TokenKind::Comma) {
      ++pos_;
      args.push_back(parse_expr());
    }
    expect_paren(')');
    if (args.size() != arity) {
      fail("'" + name.lexeme + "' takes " + std::to_string(arity) + " argument" +
               (arity == 1 ? "" : "s"),
           name.position);
    }
    return call(fn, std::move(args));
  }
};

}  // namespace detail

inline ExprPtr parse(const std::vector<Token>& tokens) {
  return detail::Parser(tokens).run();
}

inline ExprPtr parse_source(std::string_view source) {
  return parse(tokenize(source));
}

/// Variable bindings for evaluation. Later bindings of the same name win.
class Env {
 public:
  Env& bind(std::string name, double value) {
    for (auto& [n, v] : vars_) {
      if (n == name) {
        v = value;
        return *this;
      }
    }
    vars_.emplace_back(std::move(name), value);
    return *this;
  }

  const double* find(std::string_view name) const {
    for (const auto& [n, v] : vars_) {
      if (n == name) return &v;
    }
    return nullptr;
  }

 private:
  std::vector<std::pair<std::string, double>> vars_;
};

inline double evaluate(const Expr& e, const Env& env);

namespace detail {

inline double check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw EvalDomainError(std::string("non-finite result in ") + what, true);
  }
  return v;
}

struct Evaluator {
  const Env& env;

  double operator()(const Literal& n) const { return n.value; }

  double operator()(const Variable& n) const {
    const double* v = env.find(n.name);
    if (!v) throw NameError("unbound variable '" + n.name + "'");
    return *v;
  }

  double operator()(const Negate& n) const { return -evaluate(*n.operand, env); }

  double operator()(const Binary& n) const {
    double l = evaluate(*n.left, env);
    double r = evaluate(*n.right, env);
    switch (n.op) {
      case BinaryOp::Add:
        return check_finite(l + r, "addition");
      case BinaryOp::Subtract:
        return check_finite(l - r, "subtraction");
      case BinaryOp::Multiply:
        return check_finite(l * r, "multiplication");
      case BinaryOp::Divide:
        if (r == 0.0) throw EvalDomainError("division by zero");
        return check_finite(l / r, "division");
      case BinaryOp::Power:
        if (l == 0.0 && r < 0.0) {
          throw EvalDomainError("zero raised to a negative power");
        }
        if (l < 0.0 && r != std::floor(r)) {
          throw EvalDomainError("negative base with non-integer exponent");
        }
        return check_finite(std::pow(l, r), "power");
    }
    throw EvalDomainError("unknown binary operator");
  }

  double operator()(const Call& n) const {
    switch (n.fn) {
      case Builtin::Exp:
        return check_finite(std::exp(evaluate(*n.args[0], env)), "exp");
      case Builtin::Abs:
        return std::abs(evaluate(*n.args[0], env));
      case Builtin::Min:
        return std::min(evaluate(*n.args[0], env), evaluate(*n.args[1], env));
      case Builtin::Max:
        return std::max(evaluate(*n.args[0], env), evaluate(*n.args[1], env));
    }
    throw EvalDomainError("unknown builtin");
  }

  double operator()(const Conditional& n) const {
    double l = evaluate(*n.left, env);
    double r = evaluate(*n.right, env);
    bool taken = false;
    switch (n.cmp) {
      case Comparison::Less: taken = l < r; break;
      case Comparison::LessEqual: taken = l <= r; break;
      case Comparison::Greater: taken = l > r; break;
      case Comparison::GreaterEqual: taken = l >= r; break;
      case Comparison::Equal: taken = l == r; break;
    }
    return evaluate(taken ? *n.then_branch : *n.else_branch, env);
  }
};

}  // namespace detail

inline double evaluate(const Expr& e, const Env& env) {
  return std::visit(detail::Evaluator{env}, e.node);
}

inline double evaluate(const ExprPtr& e, const Env& env) { return evaluate(*e, env); }

inline void collect_free_vars(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Variable>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_free_vars(*n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_free_vars(*n.left, out);
          collect_free_vars(*n.right, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& a : n.args) collect_free_vars(*a, out);
        } else if constexpr (std::is_same_v<T, Conditional>) {
          collect_free_vars(*n.left, out);
          collect_free_vars(*n.right, out);
          collect_free_vars(*n.then_branch, out);
          collect_free_vars(*n.else_branch, out);
        }
      },
      e.node);
}

inline std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_free_vars(e, out);
  return out;
}

inline std::set<std::string> free_vars(const ExprPtr& e) { return free_vars(*e); }

namespace detail {

inline const char* op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
    case BinaryOp::Power: return "^";
  }
  return "?";
}

inline const char* cmp_symbol(Comparison cmp) {
  switch (cmp) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Equal: return "==";
  }
  return "?";
}

inline const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Exp: return "exp";
    case Builtin::Abs: return "abs";
    case Builtin::Min: return "min";
    case Builtin::Max: return "max";
  }
  return "?";
}

}  // namespace detail

/// Fully parenthesized form; reparsing yields a structurally identical tree.
inline std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return format_double(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + to_string(*n.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + to_string(*n.left) + " " + detail::op_symbol(n.op) + " " +
                 to_string(*n.right) + ")";
        } else if constexpr (std::is_same_v<T, Call>) {
          std::string out = detail::builtin_name(n.fn);
          out += "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out += ", ";
            out += to_string(*n.args[i]);
          }
          out += ")";
          return out;
        } else {
          return "(if " + to_string(*n.left) + " " + detail::cmp_symbol(n.cmp) + " " +
                 to_string(*n.right) + " then " + to_string(*n.then_branch) + " else " +
                 to_string(*n.else_branch) + ")";
        }
      },
      e.node);
}

inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

/// Structural equality (literal values compared exactly).
inline bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Literal>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return equal(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return na.op == nb.op && equal(*na.left, *nb.left) && equal(*na.right, *nb.right);
        } else if constexpr (std::is_same_v<T, Call>) {
          if (na.fn != nb.fn || na.args.size() != nb.args.size()) return false;
          for (std::size_t i = 0; i < na.args.size(); ++i) {
            if (!equal(*na.args[i], *nb.args[i])) return false;
          }
          return true;
        } else {
          return na.cmp == nb.cmp && equal(*na.left, *nb.left) && equal(*na.right, *nb.right) &&
                 equal(*na.then_branch, *nb.then_branch) &&
                 equal(*na.else_branch, *nb.else_branch);
        }
      },
      a.node);
}

inline bool equal(const ExprPtr& a, const ExprPtr& b) { return equal(*a, *b); }

}  // namespace fixlab::expr
