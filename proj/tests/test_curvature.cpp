#include <doctest.h>

#include "pk/curvature.hpp"
#include "pk/paracontact.hpp"

using namespace pk;

namespace {

// Space form of curvature -1: R(X,Y)Z = g(X,Z)Y - g(Y,Z)X.
Vec hyperbolic(const ParacontactStructure& s, std::size_t a, std::size_t b, std::size_t c) {
    return s.frame.gram(a, c) * s.e(b) - s.frame.gram(b, c) * s.e(a);
}

}  // namespace

TEST_CASE("warped fixtures have constant curvature -1") {
    for (int n : {1, 2}) {
        ParacontactStructure s = make_warped_fixture(n);
        FrameConnection conn = koszul_connection(s.frame);
        RiemannTensor R = riemann(s.frame, conn);
        std::size_t d = s.dimension();
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t c = 0; c < d; ++c)
                    CHECK(R.vector({s.e(a), s.e(b), s.e(c)}) == hyperbolic(s, a, b, c));
        RicciTensor S = ricci(s.frame, R);
        CHECK(S == s.g.scaled(-2 * n));
        RicciOperator Q = ricci_operator(s.frame, S);
        CHECK(Q == identity_tensor(d).scaled(-2 * n));
        CHECK(scalar_curvature(Q) == ScalarExpr(-2 * n * static_cast<int>(d)));
        CHECK(w2(s.frame, R, Q, n).is_zero());
    }
}

TEST_CASE("curvature identities") {
    ParacontactStructure s = make_warped_fixture(1);
    FrameConnection conn = koszul_connection(s.frame);
    RiemannTensor R = riemann_unchecked(s.frame, conn);
    CHECK(antisymmetry_residual(R).is_zero());
    CHECK(bianchi_residual(R).is_zero());
    CHECK(pair_symmetry_residual(s.frame, R).is_zero());
    RiemannTensor broken = R;
    broken.at({0, 1, 2, 2}) += ScalarExpr(1);
    CHECK_FALSE(antisymmetry_residual(broken).is_zero());
}

TEST_CASE("flat frame") {
    Chart c{{"x", "y", "z"}};
    Frame f{c, {VectorField{{1, 0, 0}}, VectorField{{0, 1, 0}}, VectorField{{0, 0, 1}}},
            {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
    RiemannTensor R = riemann(f, koszul_connection(f));
    CHECK(R.is_zero());
    CHECK(ricci(f, R).is_zero());
}

TEST_CASE("lie derivatives along xi") {
    ParacontactStructure s = make_warped_fixture(1);
    Tensor lg = lie_derivative(s.frame, s.xi, s.g);
    CHECK(lg == (s.g - s.eta_eta()).scaled(2));
    CHECK(lie_derivative(s.frame, s.xi, s.phi).is_zero());
    CHECK(lie_derivative(s.frame, s.xi, covector(s.eta)).is_zero());
    VectorField xi = s.frame.from_frame(s.xi);
    CHECK(lie_derivative(s.frame, xi, s.g) == lg);
}

TEST_CASE("nijenhuis tensor") {
    ParacontactStructure s = make_warped_fixture(1);
    CHECK(nijenhuis(s.frame, s.phi).is_zero());
    CHECK(nijenhuis(s.frame, identity_tensor(3)).is_zero());
}

TEST_CASE("composition of endomorphisms") {
    ParacontactStructure s = make_warped_fixture(1);
    Tensor phi2 = compose(s.phi, s.phi);
    CHECK(phi2 == identity_tensor(3) - s.eta_xi());
    CHECK(compose(identity_tensor(3), s.phi) == s.phi);
}
