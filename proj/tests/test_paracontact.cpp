#include <doctest.h>

#include "pk/paracontact.hpp"
#include "support.hpp"

using namespace pk;

namespace {

bool all_pass(const std::vector<CheckReport>& reports) {
    bool ok = true;
    for (const auto& r : reports) {
        INFO(r.name << ": " << r.witness << " " << r.detail);
        CHECK(r.passed());
        ok = ok && r.passed();
    }
    return ok;
}

}  // namespace

TEST_CASE("fixtures satisfy the axioms and the para-Kenmotsu condition") {
    for (const char* name : {"example_r3.pk", "example_r5.pk"}) {
        ParacontactStructure s = test::load_structure(name);
        FrameConnection conn = koszul_connection(s.frame);
        auto axioms = check_axioms(s);
        CHECK(axioms.size() == 11);
        CHECK(all_pass(axioms));
        CHECK(check_para_kenmotsu(s, conn).passed());
        CHECK(para_kenmotsu_residual(s, conn).is_zero());
        auto ids = identity_suite(s, conn, riemann(s.frame, conn));
        CHECK(ids.size() == 14);
        CHECK(all_pass(ids));
    }
}

TEST_CASE("paracomplex eigenspaces have rank n") {
    ParacontactStructure s = test::load_structure("example_r5.pk");
    auto ranks = paracomplex_ranks(s);
    REQUIRE(ranks.has_value());
    CHECK(ranks->plus == 2);
    CHECK(ranks->minus == 2);
}

TEST_CASE("identity endomorphism is not a paracontact structure") {
    ParacontactStructure s = test::load_structure("broken_phi.pk");
    CHECK(phi_squared_residual(s) == s.eta_xi());
    std::set<std::string> failed;
    for (const auto& r : check_axioms(s))
        if (!r.passed()) {
            failed.insert(r.name);
            CHECK_FALSE(r.witness.empty());
        }
    CHECK(failed.count("axiom.phi_squared"));
    CHECK(failed.count("axiom.phi_xi"));
    CHECK(failed.count("axiom.compatible_metric"));
    CHECK_FALSE(failed.count("axiom.eta_xi"));
}

TEST_CASE("flat structure is paracontact but not para-Kenmotsu") {
    ParacontactStructure s = test::load_structure("flat_r3.pk");
    FrameConnection conn = koszul_connection(s.frame);
    CHECK(all_pass(check_axioms(s)));
    CheckReport pk = check_para_kenmotsu(s, conn);
    CHECK(pk.status == Status::fail);
    CHECK_FALSE(pk.witness.empty());
    auto ids = identity_suite(s, conn, riemann(s.frame, conn));
    auto nabla_xi = std::find_if(ids.begin(), ids.end(), [](const CheckReport& r) { return r.name == "identity.nabla_xi"; });
    REQUIRE(nabla_xi != ids.end());
    CHECK(nabla_xi->status == Status::fail);
}

TEST_CASE("seeded warped fixtures") {
    for (int n : {1, 2, 3})
        for (std::uint32_t seed : {1u, 7u, 42u}) {
            CAPTURE(n);
            CAPTURE(seed);
            ParacontactStructure s = make_warped_fixture(n, {}, seed);
            FrameConnection conn = koszul_connection(s.frame);
            CHECK(all_pass(check_axioms(s)));
            CHECK(para_kenmotsu_residual(s, conn).is_zero());
            if (n < 3) CHECK(all_pass(identity_suite(s, conn, riemann(s.frame, conn))));
        }
}

TEST_CASE("unseeded fixture layout") {
    ParacontactStructure s = make_warped_fixture(2);
    CHECK(s.dimension() == 5);
    CHECK(s.chart().coord(0) == "x1");
    CHECK(s.chart().coord(4) == "z");
    CHECK(s.frame.gram(0, 0) == ScalarExpr(1));
    CHECK(s.frame.gram(2, 2) == ScalarExpr(-1));
    CHECK(s.xi == s.e(4));
    CHECK(s.apply_phi(s.e(0)) == s.e(2));
    CHECK(s.eta_of(s.xi) == ScalarExpr(1));
}

TEST_CASE("status names") {
    CHECK(std::string(to_string(Status::pass)) == "PASS");
    CHECK(std::string(to_string(Status::fail)) == "FAIL");
    CHECK(std::string(to_string(Status::skipped)) == "SKIPPED");
    ParacontactStructure s = make_warped_fixture(1);
    CheckReport r = tensor_check("demo", "ref", s.g, s.frame_names);
    CHECK(r.status == Status::fail);
    CHECK(r.witness == "(E1,E1): 1");
}
