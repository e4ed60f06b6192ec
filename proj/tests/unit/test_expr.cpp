#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "anholkit/expr.hpp"
#include "random_ast.hpp"

using namespace anholkit;

namespace {

double at(const std::string& text, std::vector<double> v, Variance var = Variance::vector) {
  VarContext ctx(2, 2, var);
  return evaluate(parse(text, ctx), std::span<const double>(v));
}

long offset_of(const std::string& text) {
  try {
    parse(text, VarContext(2, 2, Variance::vector));
  } catch (const ParseError& e) {
    return static_cast<long>(e.offset());
  }
  return -1;
}

}  // namespace

TEST_CASE("chart variables are named by variance") {
  VarContext tm(2, 3, Variance::vector), ctm(2, 2, Variance::covector);
  CHECK(tm.size() == 5);
  CHECK(tm.name(0) == "x1");
  CHECK(tm.name(4) == "y3");
  CHECK(ctm.name(2) == "p1");
  CHECK(tm.index_of("y2") == 3);
  CHECK(tm.index_of("p1") == -1);
}

TEST_CASE("arithmetic and precedence") {
  const std::vector<double> u{0.5, -2.0, 3.0, 0.25};
  CHECK(at("x1 + 2*x2", u) == doctest::Approx(-3.5));
  CHECK(at("-x2^2", u) == doctest::Approx(-4.0));
  CHECK(at("y1 - y2 - 1", u) == doctest::Approx(1.75));
  CHECK(at("y1 / x1 / 2", u) == doctest::Approx(3.0));
  CHECK(at("2^3^2", u) == doctest::Approx(512.0));
  CHECK(at("(x1 + y1)*(x1 - y1)", u) == doctest::Approx(0.25 - 9.0));
  CHECK(at("sqrt(y1^2 + 16*y2^2)", u) == doctest::Approx(std::sqrt(10.0)));
  CHECK(at("exp(log(y1)) + sin(x1)^2 + cos(x1)^2", u) == doctest::Approx(4.0));
  CHECK(at("abs(x2) + tan(0)", u) == doctest::Approx(2.0));
  CHECK(at("0.15*p1", u, Variance::covector) == doctest::Approx(0.45));
}

TEST_CASE("parse errors carry offsets") {
  CHECK(offset_of("sqrt(y1^2 +* y2^2)") == 11);
  CHECK(offset_of("x1 + z3") == 5);
  CHECK(offset_of("sqrt(x1") >= 7);
  CHECK_THROWS_AS(parse("sin(x1, x2)", VarContext(2, 2, Variance::vector)), ParseError);
  CHECK_THROWS_AS(parse("", VarContext(2, 2, Variance::vector)), ParseError);
  CHECK_THROWS_AS(parse("foo(x1)", VarContext(2, 2, Variance::vector)), ParseError);
  // No implicit multiplication and no scientific notation.
  CHECK_THROWS_AS(parse("2x1", VarContext(2, 2, Variance::vector)), ParseError);
  CHECK_THROWS_AS(parse("1e-3*x1", VarContext(2, 2, Variance::vector)), ParseError);
  try {
    parse("x1 + z3", VarContext(2, 2, Variance::vector));
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::unknown_identifier);
  }
}

TEST_CASE("domain errors at evaluation") {
  CHECK_THROWS_AS(at("sqrt(x2)", {0.5, -2.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(at("log(x2)", {0.5, -2.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(at("1/(x1 - 0.5)", {0.5, -2.0, 1.0, 1.0}), Error);
}

TEST_CASE("format is a fixed point after one parse") {
  VarContext ctx(2, 2, Variance::vector);
  for (const char* text : {"sqrt(y1^2 + sin(x1)^2*y2^2)", "-(x1 - x2)^2", "x1 - (x2 - y1)", "2^-1", "-x1^-2",
                           "x1/(x2*y1)", "(x1/x2)/y1", "0.1 + 0.000001*x1", "-(-x1)"}) {
    const std::string once = format(parse(text, ctx));
    CHECK(format(parse(once, ctx)) == once);
    const std::vector<double> u{0.3, 1.7, 0.9, -0.4};
    CHECK(evaluate(parse(once, ctx), std::span<const double>(u)) ==
          doctest::Approx(evaluate(parse(text, ctx), std::span<const double>(u))));
  }
}

TEST_CASE("substitution composes fields") {
  VarContext ctx(1, 1, Variance::vector);
  ScalarField f = parse("x1^2 + y1", ctx);
  std::vector<NodePtr> repl{parse("2*x1", ctx).root_ptr(), parse("y1 + 1", ctx).root_ptr()};
  ScalarField g = substitute(f, repl, ctx);
  const std::vector<double> u{0.5, 2.0};
  CHECK(evaluate(g, std::span<const double>(u)) == doctest::Approx(1.0 + 3.0));
}

TEST_CASE("random expressions survive the round trip") {
  VarContext ctx(2, 2, Variance::covector);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    ScalarField f = verify::random_ast(ctx, rng, {5, true});
    const std::string s1 = format(f);
    ScalarField f2 = parse(s1, ctx);
    REQUIRE(format(f2) == s1);
    CHECK(structurally_equal(f2.root(), parse(format(f2), ctx).root()));
  }
}
