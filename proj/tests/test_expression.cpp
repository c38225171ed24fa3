#include <cmath>
#include <random>

#include "doctest.h"
#include "dirac_weyl/expression.hpp"
#include "dirac_weyl/potential.hpp"

using namespace dw;

TEST_CASE("parse and evaluate") {
  auto v = parse_potential("1 - x^2");
  CHECK(v.ast.evaluate(0.0) == 1.0);
  CHECK(v.ast.evaluate(2.0) == -3.0);
  CHECK(v.first.evaluate(1.5) == doctest::Approx(-3.0));
  CHECK(v.second.evaluate(0.3) == doctest::Approx(-2.0));

  CHECK(parse_expression("sin(x)*2 + 0.5").evaluate(0.0) == 0.5);
  CHECK(parse_expression("2^3^2").evaluate(0) == 512.0);
  CHECK(parse_expression("-2^2").evaluate(0) == -4.0);
  CHECK(parse_expression("2^-1").evaluate(0) == 0.5);
  CHECK(parse_expression("8 / 2 / 2").evaluate(0) == 2.0);
  CHECK(parse_expression("1 - 2 - 3").evaluate(0) == -4.0);
  CHECK(parse_expression("1.5e1 + .5").evaluate(0) == 15.5);
  CHECK(parse_expression("exp(-x^2)").evaluate(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(parse_expression("abs(x) * tanh(x)").evaluate(-1.0) == doctest::Approx(std::tanh(-1.0)));
  CHECK(parse_expression("cos(pi)").evaluate(0) == doctest::Approx(-1.0));
}

TEST_CASE("syntax errors carry the offset") {
  try {
    parse_expression("1 +* 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
    CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("(1 + x"), ParseError);
  CHECK_THROWS_AS(parse_expression("1 + x)"), ParseError);
  CHECK_THROWS_AS(parse_expression("sin x"), ParseError);
  CHECK_THROWS_AS(parse_expression("2 3"), ParseError);
}

TEST_CASE("unknown identifiers are named") {
  try {
    parse_expression("1 + foo(x)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_expression("y + 1"), ParseError);
  CHECK_NOTHROW(parse_expression("1 + x"));
}

namespace {

Expression random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  std::uniform_real_distribution<double> num(0.0, 5.0);
  switch (pick(rng)) {
    case 0: return Expression::constant(std::round(num(rng) * 100) / 100);
    case 1: return Expression::variable();
    case 2: return Expression::binary(Expression::Kind::add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 3: return Expression::binary(Expression::Kind::sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 4: return Expression::binary(Expression::Kind::mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Expression::binary(Expression::Kind::div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Expression::binary(Expression::Kind::pow, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return Expression::negate(random_tree(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> f(0, 6);
      return Expression::apply(static_cast<Expression::Func>(f(rng)), random_tree(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("print-parse round trip is the identity on trees") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Expression e = random_tree(rng, 5);
    std::string text = e.to_string();
    Expression back = parse_expression(text);
    INFO(text);
    CHECK(back == e);
    CHECK(back.to_string() == text);
  }
  for (const char* src : {"1 - x^2", "-x^-2", "--x", "(x + 1) * (x - 1)", "x^(1/2)",
                          "0.5 - (x^2 - 1)^2", "exp(-x^2)", "1e-07 * x", "2 - (3 - x)"}) {
    Expression e = parse_expression(src);
    CHECK(parse_expression(e.to_string()) == e);
  }
}

TEST_CASE("symbolic derivatives agree with finite differences") {
  for (const char* src : {"1 - x^2", "sin(x)*2 + 0.5", "exp(-x^2)", "tanh(3*x) / (1 + x^2)",
                          "0.5 - (x^2 - 1)^2", "cos(x)^3", "x^x", "abs(x - 0.1) * x"}) {
    Potential v = Potential::from_source(src);
    INFO(src);
    CHECK(derivative_consistency(v, 0.2, 1.7, 100, 3) < 1e-4);
  }
}

TEST_CASE("derivative trees print and re-parse") {
  auto p = parse_potential("tanh(x)^2 - log(2 + x) + abs(x)");
  CHECK(parse_expression(p.first.to_string()) == p.first);
  CHECK(parse_expression(p.second.to_string()) == p.second);
}

TEST_CASE("catalog potentials parse and have consistent derivatives") {
  CHECK(potential_catalog().size() == 5);
  for (const auto& entry : potential_catalog()) {
    Potential v = Potential::from_source(entry.expression);
    INFO(entry.name);
    CHECK(derivative_consistency(v, -2.0, 2.0) < 1e-4);
  }
  CHECK(Potential::from_source("1 - x^2")(0.5) == doctest::Approx(0.75));
  CHECK(Potential::constant(2.5).first_derivative(3.0) == 0.0);
}
