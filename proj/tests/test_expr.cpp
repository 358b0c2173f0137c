#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <random>

#include "fixlab/expr.hpp"

using namespace fixlab;
using namespace fixlab::expr;

namespace {

double eval_source(std::string_view src, const Env& env = {}) {
  return evaluate(parse_source(src), env);
}

}  // namespace

TEST_CASE("tokenize covers the sample expressions") {
  auto toks = tokenize("u/8");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].kind == TokenKind::Identifier);
  CHECK(toks[1].kind == TokenKind::Operator);
  CHECK(toks[2].kind == TokenKind::Number);

  // if, u, <, 1, then, u, /, 8, else, 1, /, 16
  CHECK(tokenize("if u < 1 then u/8 else 1/16").size() == 12);
}

TEST_CASE("tokenize reports illegal characters with their byte offset") {
  try {
    tokenize("u @ 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 2);
  }
  CHECK_THROWS_AS(tokenize("a = b"), SyntaxError);
  CHECK(tokenize("   \t\n").empty());
}

TEST_CASE("tokenize handles decimal and exponent forms") {
  CHECK(eval_source("1.5e-3") == 1.5e-3);
  CHECK(eval_source("2E6") == 2e6);
  CHECK(eval_source("0.25") == 0.25);
  // "2exp(1)" splits into a number and an identifier, which cannot parse
  CHECK_THROWS_AS(parse_source("2exp(1)"), SyntaxError);
}

TEST_CASE("tokenize stops numbers before a bare exponent marker or dot") {
  // "1e" is the number 1 followed by the identifier e
  auto toks = tokenize("1e");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].kind == TokenKind::Number);
  CHECK(toks[1].kind == TokenKind::Identifier);
  // a dot not followed by a digit is not part of a number
  CHECK_THROWS_AS(tokenize("0.5."), SyntaxError);
}

TEST_CASE("token positions strictly increase") {
  auto toks = tokenize("if u < 1 then max(u, 0.5) else u^2");
  for (std::size_t i = 1; i < toks.size(); ++i) {
    CHECK(toks[i].position > toks[i - 1].position);
  }
}

TEST_CASE("power is right-associative and precedence follows the grammar") {
  CHECK(eval_source("2^3^2") == 512.0);
  CHECK(eval_source("1+2*3") == 7.0);
  CHECK(eval_source("(1+2)*3") == 9.0);
  CHECK(eval_source("-2^2") == -4.0);
  CHECK(eval_source("2*-3") == -6.0);
  CHECK(eval_source("2^-1") == 0.5);
}

TEST_CASE("conditional parses to a conditional node") {
  ExprPtr e = parse_source("if u < 1 then u else 1");
  CHECK(std::holds_alternative<Conditional>(e->node));
}

TEST_CASE("parse rejects malformed input with positions") {
  CHECK_THROWS_AS(parse_source("1+"), SyntaxError);
  CHECK_THROWS_AS(parse_source(")"), SyntaxError);
  CHECK_THROWS_AS(parse_source("2 3"), SyntaxError);
  CHECK_THROWS_AS(parse_source("min(1)"), SyntaxError);
  CHECK_THROWS_AS(parse_source("exp(1, 2)"), SyntaxError);
  CHECK_THROWS_AS(parse_source("foo(1)"), SyntaxError);
  CHECK_THROWS_AS(parse_source("if u < 1 then u"), SyntaxError);
  CHECK_THROWS_AS(parse_source(""), SyntaxError);
}

TEST_CASE("evaluate matches hand-computed values") {
  Env env;
  env.bind("u", 0.8);
  CHECK(eval_source("u/8", env) == Catch::Approx(0.1).margin(1e-15));
  CHECK(eval_source("exp(0)") == 1.0);

  Env at_one;
  at_one.bind("u", 1.0);
  CHECK(eval_source("if u < 1 then u/20 else 1/18", at_one) ==
        Catch::Approx(1.0 / 18.0).margin(1e-15));
  Env interior;
  interior.bind("u", 0.5);
  CHECK(eval_source("if u < 1 then u/20 else 1/18", interior) == 0.025);
}

TEST_CASE("evaluate builtins") {
  CHECK(eval_source("abs(-3)") == 3.0);
  CHECK(eval_source("min(3, 5)") == 3.0);
  CHECK(eval_source("max(3, 5)") == 5.0);
  CHECK(eval_source("(-2)^2") == 4.0);
}

TEST_CASE("evaluate raises name and domain errors") {
  CHECK_THROWS_AS(eval_source("u + 1"), NameError);
  CHECK_THROWS_AS(eval_source("1/0"), EvalDomainError);
  CHECK_THROWS_AS(eval_source("0^-1"), EvalDomainError);
  CHECK_THROWS_AS(eval_source("(-8)^0.5"), EvalDomainError);
  CHECK_THROWS_AS(eval_source("exp(1e9)"), EvalDomainError);
}

TEST_CASE("conditional evaluates exactly one branch") {
  CHECK(eval_source("if 1 < 2 then 0 else 1/0") == 0.0);
  CHECK(eval_source("if 2 <= 1 then 1/0 else 4") == 4.0);
}

TEST_CASE("free_vars lists exactly the variables that appear") {
  CHECK(free_vars(parse_source("u+1")) == std::set<std::string>{"u"});
  CHECK(free_vars(parse_source("3")).empty());
  CHECK(free_vars(parse_source("x*u + x1")) == std::set<std::string>{"x", "u", "x1"});
}

TEST_CASE("evaluate is deterministic") {
  ExprPtr e = parse_source("if u < 1 then exp(u)/8 else max(u, 1/16)");
  Env env;
  env.bind("u", 0.123456789);
  double a = evaluate(e, env);
  double b = evaluate(e, env);
  CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
}

namespace {

ExprPtr random_tree(std::mt19937_64& rng, int depth) {
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const std::uint64_t pick = depth <= 0 ? rng() % 2 : rng() % 6;
  switch (pick) {
    case 0:
      return literal(10.0 * uniform());
    case 1: {
      static const char* names[] = {"u", "x1", "x2"};
      return variable(names[rng() % 3]);
    }
    case 2:
      return negate(random_tree(rng, depth - 1));
    case 3: {
      auto op = static_cast<BinaryOp>(rng() % 5);
      return binary(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    }
    case 4: {
      auto fn = static_cast<Builtin>(rng() % 4);
      std::vector<ExprPtr> args;
      args.push_back(random_tree(rng, depth - 1));
      if (fn == Builtin::Min || fn == Builtin::Max) args.push_back(random_tree(rng, depth - 1));
      return call(fn, std::move(args));
    }
    default: {
      auto cmp = static_cast<Comparison>(rng() % 5);
      return conditional(cmp, random_tree(rng, depth - 1), random_tree(rng, depth - 1),
                         random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("pretty-printed trees reparse to structurally identical trees") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 200; ++k) {
    ExprPtr tree = random_tree(rng, 4);
    std::string printed = to_string(tree);
    ExprPtr reparsed = parse_source(printed);
    INFO("printed: " << printed);
    CHECK(equal(tree, reparsed));
  }
}
