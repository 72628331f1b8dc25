#include <doctest.h>

#include "pk/connection.hpp"
#include "pk/paracontact.hpp"

using namespace pk;

namespace {

// Christoffel symbols of a diagonal coordinate metric, computed directly.
ScalarExpr christoffel(const Chart& c, const Matrix& g, std::size_t k, std::size_t i, std::size_t j) {
    auto d = [&](std::size_t a, std::size_t b, std::size_t wrt) { return g[a][b].partial(c.coord(wrt)); };
    ScalarExpr sum = d(j, k, i) + d(i, k, j) - d(i, j, k);
    return sum.scaled(Rational(1, 2)) * g[k][k].inverse();
}

}  // namespace

TEST_CASE("koszul matches christoffel symbols of a coordinate metric") {
    Chart c{{"x", "y", "z"}};
    ScalarExpr e2z = ScalarExpr::exp(c.symbols(), LinearForm::variable(2, 2));
    ScalarExpr emx = ScalarExpr::exp(c.symbols(), LinearForm::variable(0, -1));
    Matrix g{{e2z, 0, 0}, {0, -e2z * emx, 0}, {0, 0, 3}};
    Frame f{c, {VectorField{{1, 0, 0}}, VectorField{{0, 1, 0}}, VectorField{{0, 0, 1}}}, g};
    FrameConnection conn = koszul_connection(f);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) CHECK(conn.gamma(i, j)[k] == christoffel(c, g, k, i, j));
}

TEST_CASE("levi-civita connection of the warped frame") {
    ParacontactStructure s = make_warped_fixture(1);
    FrameConnection conn = koszul_connection(s.frame);
    auto e = [&](std::size_t a) { return s.e(a); };
    CHECK(conn.gamma(0, 0) == zero_vec(3) - e(2));
    CHECK(is_zero(conn.gamma(0, 1)));
    CHECK(conn.gamma(0, 2) == e(0));
    CHECK(is_zero(conn.gamma(1, 0)));
    CHECK(conn.gamma(1, 1) == e(2));
    CHECK(conn.gamma(1, 2) == e(1));
    CHECK(is_zero(conn.gamma(2, 0)));
    CHECK(is_zero(conn.gamma(2, 1)));
    CHECK(is_zero(conn.gamma(2, 2)));
    CHECK(torsion_residual(s.frame, conn).is_zero());
    CHECK(metric_residual(s.frame, conn).is_zero());
    CHECK(covariant_derivative_vector(s.frame, conn, e(0), e(0)) == zero_vec(3) - e(2));
}

TEST_CASE("flat frame has vanishing connection") {
    Chart c{{"x", "y", "z"}};
    Frame f{c, {VectorField{{1, 0, 0}}, VectorField{{0, 1, 0}}, VectorField{{0, 0, 1}}},
            {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
    FrameConnection conn = koszul_connection(f);
    CHECK(conn == FrameConnection(3));
}

TEST_CASE("metric is parallel, tensors round-trip through lowering") {
    ParacontactStructure s = make_warped_fixture(1);
    FrameConnection conn = koszul_connection(s.frame);
    CHECK(nabla(s.frame, conn, s.g).is_zero());
    CHECK(nabla(s.frame, conn, identity_tensor(3)).is_zero());
    CHECK(raise_first(s.frame, lower_first(s.frame, s.phi)) == s.phi);
    Tensor ne = nabla(s.frame, conn, s.eta_eta());
    CHECK_FALSE(ne.is_zero());
    CHECK(covariant_derivative_tensor(s.frame, conn, s.g, s.e(0)).is_zero());
}

TEST_CASE("a wrong connection is detected") {
    ParacontactStructure s = make_warped_fixture(1);
    FrameConnection conn = koszul_connection(s.frame);
    conn.gamma(2, 0) = s.e(0);
    CHECK_FALSE(torsion_residual(s.frame, conn).is_zero());
    FrameConnection skewed = koszul_connection(s.frame);
    skewed.gamma(0, 0) = zero_vec(3);
    CHECK_FALSE(metric_residual(s.frame, skewed).is_zero());
}
