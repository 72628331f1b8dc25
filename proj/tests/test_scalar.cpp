#include <doctest.h>

#include <cmath>

#include "pk/expr_parser.hpp"
#include "pk/scalar.hpp"

using namespace pk;

namespace {

struct Ring {
    Symbols sym = make_symbols({"x", "y", "z"}, {"lambda", "mu"});
    ScalarExpr x = ScalarExpr::variable(sym, "x");
    ScalarExpr y = ScalarExpr::variable(sym, "y");
    ScalarExpr z = ScalarExpr::variable(sym, "z");
    ScalarExpr lambda = ScalarExpr::variable(sym, "lambda");
    ScalarExpr mu = ScalarExpr::variable(sym, "mu");
    ScalarExpr ez(const Rational& c) const { return ScalarExpr::exp(sym, LinearForm::variable(2, c)); }
};

}  // namespace

TEST_CASE("canonical form makes equal expressions structurally equal") {
    Ring r;
    CHECK((r.x + r.y).pow(2) == r.x * r.x + r.y * r.y + r.x * r.y.scaled(2));
    CHECK((r.x - r.x).is_zero());
    CHECK((r.ez(1) * r.ez(-1)) == ScalarExpr(1));
    CHECK((r.ez(1) * r.ez(1)) == r.ez(2));
    CHECK(r.x * r.y == r.y * r.x);
    CHECK((r.x + ScalarExpr(Rational(1, 2))).num_terms() == 2);
    CHECK(ScalarExpr(Rational(6, 4)) == ScalarExpr(Rational(3, 2)));
}

TEST_CASE("constants and single terms") {
    Ring r;
    CHECK(ScalarExpr(3).is_constant());
    CHECK(ScalarExpr(3).constant_value() == Rational(3));
    CHECK_FALSE(r.ez(1).is_constant());
    CHECK_FALSE(r.x.constant_value().has_value());
    CHECK(r.ez(1).scaled(5).is_single_term());
    CHECK(ScalarExpr().is_zero());
}

TEST_CASE("partial derivatives") {
    Ring r;
    CHECK(r.x.pow(3).partial("x") * r.y == (r.x.pow(3) * r.y).partial("x"));
    CHECK((r.x.pow(3) * r.y).partial("x") == r.x.pow(2).scaled(3) * r.y);
    CHECK(r.ez(2).partial("z") == r.ez(2).scaled(2));
    CHECK((r.x * r.ez(-1)).partial("z") == -(r.x * r.ez(-1)));
    CHECK((r.lambda * r.x).partial("x") == r.lambda);
    CHECK((r.mu * r.lambda).partial("z").is_zero());
    CHECK(ScalarExpr(7).partial(0).is_zero());
    CHECK_THROWS_AS(r.x.partial("w"), UnknownCoordinate);
    CHECK(partial_diff(r.y.pow(2), "y") == r.y.scaled(2));
}

TEST_CASE("inverse of units") {
    Ring r;
    CHECK(r.ez(1).scaled(3).inverse() == r.ez(-1).scaled(Rational(1, 3)));
    CHECK(invert(ScalarExpr(Rational(-2, 5))) == ScalarExpr(Rational(-5, 2)));
    CHECK_THROWS_AS((r.x + 1).inverse(), NonInvertible);
    CHECK_THROWS_AS(r.x.inverse(), NonInvertible);
    CHECK_THROWS_AS(ScalarExpr().inverse(), NonInvertible);
}

TEST_CASE("exact evaluation agrees with floating point") {
    Ring r;
    ScalarExpr f = r.x.pow(2) * r.ez(1) + r.y.scaled(Rational(1, 3)) - r.ez(-2);
    std::map<std::string, Rational> at{{"x", 2}, {"y", 3}, {"z", Rational(1, 2)}};
    ExactValue v = f.evaluate(at);
    double expected = 4.0 * std::exp(0.5) + 1.0 - std::exp(-1.0);
    CHECK(v.approx() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(substitute_rational(f, at) == v);
    CHECK_THROWS_AS(f.evaluate({{"x", 1}}), MissingAssignment);
}

TEST_CASE("substitution of a polynomial variable") {
    Ring r;
    ScalarExpr f = r.lambda.pow(2) + r.mu;
    ScalarExpr g = f.substitute(3, ScalarExpr(2) - r.mu);
    CHECK(g == ScalarExpr(4) - r.mu.scaled(3) + r.mu.pow(2));
}

TEST_CASE("mixing charts is rejected") {
    Ring a;
    Symbols other = make_symbols({"u", "v", "w"});
    ScalarExpr u = ScalarExpr::variable(other, "u");
    CHECK_THROWS_AS(a.x + u, ChartMismatch);
    CHECK_THROWS_AS(a.x * u, ChartMismatch);
    CHECK((a.x + ScalarExpr(1)).symbols() == a.sym);
}

TEST_CASE("rational roots") {
    Ring r;
    auto roots = rational_roots((r.mu - 1) * (r.mu - 5), 4);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Rational(1));
    CHECK(roots[1] == Rational(5));
    auto halves = rational_roots(r.mu.pow(2).scaled(2) - r.mu.scaled(3) + 1, 4);
    REQUIRE(halves.size() == 2);
    CHECK(halves[0] == Rational(1, 2));
    CHECK(halves[1] == Rational(1));
    CHECK(rational_roots((r.mu - 1).pow(2), 4).size() == 1);
    CHECK(rational_roots(r.mu.pow(2) + 1, 4).empty());
}

TEST_CASE("printing round-trips through the parser") {
    Ring r;
    ScalarExpr f = r.x.pow(2).scaled(-2) * r.ez(-2) + r.lambda * r.y - Rational(3, 7);
    CHECK(parse_scalar(f.to_string(), r.sym) == f);
    CHECK(ScalarExpr(0).to_string() == "0");
    CHECK(to_string(Rational(-3, 4)) == "-3/4");
}
