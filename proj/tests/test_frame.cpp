#include <doctest.h>

#include "pk/frame.hpp"

using namespace pk;

namespace {

struct Warped3 {
    Chart chart{{"x", "y", "z"}};
    ScalarExpr ez = ScalarExpr::exp(chart.symbols(), LinearForm::variable(2));
    Frame frame{chart,
                {VectorField{{ez, 0, 0}}, VectorField{{0, ez, 0}}, VectorField{{0, 0, -1}}},
                {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
};

}  // namespace

TEST_CASE("lie bracket of coordinate fields") {
    Warped3 w;
    VectorField e1{{w.ez, 0, 0}};
    VectorField e3{{0, 0, -1}};
    // [e^z d/dx, -d/dz] = e^z d/dx
    CHECK(bracket(e1, e3) == e1);
    CHECK(bracket(e3, e1) == VectorField{{-w.ez, 0, 0}});
    CHECK(apply(e1, w.chart.var("x") * w.chart.var("y")) == w.ez * w.chart.var("y"));
}

TEST_CASE("structure functions of the warped frame") {
    Warped3 w;
    const Frame& f = w.frame;
    CHECK(f.structure(0, 2) == basis_vec(3, 0));
    CHECK(f.structure(1, 2) == basis_vec(3, 1));
    CHECK(f.structure(2, 0) == zero_vec(3) - basis_vec(3, 0));
    CHECK(is_zero(f.structure(0, 1)));
    CHECK(f.pseudo_orthonormal());
    CHECK(f.diagonal_gram());
    CHECK(f.metric(basis_vec(3, 1), basis_vec(3, 1)) == ScalarExpr(-1));
}

TEST_CASE("frame and coordinate components round-trip") {
    Warped3 w;
    Vec v{w.chart.var("x"), 3, w.ez};
    CHECK(w.frame.to_frame(w.frame.from_frame(v)) == v);
    VectorField dz{{0, 0, 1}};
    CHECK(w.frame.to_frame(dz) == Vec{0, 0, -1});
    CHECK(w.frame.derivative(0, w.chart.var("x")) == w.ez);
}

TEST_CASE("determinant and inverse") {
    Symbols s = make_symbols({"x", "y", "z"});
    ScalarExpr ez = ScalarExpr::exp(s, LinearForm::variable(2));
    ScalarExpr x = ScalarExpr::variable(s, "x");
    Matrix m{{ez, x, 0}, {0, ez.scaled(2), 1}, {0, 0, 3}};
    CHECK(determinant(m) == ez.pow(2).scaled(6));
    Matrix inv = inverse(m);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            ScalarExpr sum;
            for (std::size_t k = 0; k < 3; ++k) sum += m[i][k] * inv[k][j];
            CHECK(sum == ScalarExpr(i == j ? 1 : 0));
        }
    CHECK_THROWS_AS(inverse(Matrix{{x, 0}, {0, 1}}), NonInvertible);
}

TEST_CASE("rational rank") {
    CHECK(rational_rank({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}) == 2);
    CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);
    CHECK(rational_rank({{1, 0}, {0, Rational(1, 3)}}) == 2);
}

TEST_CASE("invalid frames") {
    CHECK_THROWS_AS(Chart({"x", "y"}), Error);
    Chart c{{"x", "y", "z"}};
    CHECK_THROWS_AS(Frame(c, {VectorField{{1, 0, 0}}, VectorField{{2, 0, 0}}, VectorField{{0, 0, 1}}},
                          {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}),
                    Error);
}

TEST_CASE("tensors") {
    Warped3 w;
    Tensor g = metric_tensor(w.frame);
    CHECK(g.scalar({basis_vec(3, 0), basis_vec(3, 0)}) == ScalarExpr(1));
    CHECK(g.scalar({basis_vec(3, 1), basis_vec(3, 1)}) == ScalarExpr(-1));
    Vec eta{0, 0, 1};
    Tensor ee = outer(eta, eta);
    CHECK(ee.at({2, 2}) == ScalarExpr(1));
    CHECK((g - ee).at({2, 2}).is_zero());
    CHECK(covector(eta).scalar({Vec{5, 6, 7}}) == ScalarExpr(7));
    auto wit = first_nonzero(g - ee);
    REQUIRE(wit.has_value());
    CHECK(wit->describe({"E1", "E2", "E3"}) == "(E1,E1): 1");
    CHECK_FALSE(first_nonzero(g - g).has_value());
    CHECK_THROWS(Tensor::from_matrix({{1, 2}, {3, 4}}, true));
}

TEST_CASE("exterior derivative of a one-form") {
    Warped3 w;
    // eta = E3^flat is closed; the dual of E1 is not.
    CHECK(exterior_derivative_1form(w.frame, Vec{0, 0, 1}).is_zero());
    Tensor d = exterior_derivative_1form(w.frame, Vec{1, 0, 0});
    CHECK(d.at({0, 2}) == ScalarExpr(-1));
    CHECK(d.at({2, 0}) == ScalarExpr(1));
}
