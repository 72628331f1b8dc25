#include <doctest.h>

#include <sstream>

#include "pk/cli.hpp"
#include "support.hpp"

using namespace pk;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pkverify");
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({"check", test::fixture_path("example_r3.pk")}).code == exit_ok);
    CHECK(run({"check", test::fixture_path("flat_r3.pk")}).code == exit_check_failed);
    CHECK(run({"check", test::fixture_path("malformed/even_dimension.pk")}).code == exit_input_error);
    CHECK(run({"check", test::fixture_path("nope.pk")}).code == exit_input_error);
    CHECK(run({"frobnicate"}).code == exit_input_error);
    CHECK(run({"factors", "--n", "0"}).code == exit_input_error);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("diagnostics carry the position") {
    std::string path = test::fixture_path("malformed/unknown_identifier.pk");
    Run r = run({"check", path});
    CHECK(r.err.find(path + ":3:16: semantic error: unknown identifier 'w'") == 0);
    CHECK(r.out.empty());
}

TEST_CASE("json output is deterministic") {
    std::vector<std::string> args{"check", test::fixture_path("example_r3.pk"), "--format", "json-like"};
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out.front() == '{');
}

TEST_CASE("subcommands") {
    Run solve = run({"solve", test::fixture_path("example_r5.pk")});
    CHECK(solve.code == exit_ok);
    CHECK(solve.out.find("lambda = 3, mu = 1") != std::string::npos);
    Run cond = run({"condition", test::fixture_path("example_r3.pk"), "--kind", "S.W2"});
    CHECK(cond.code == exit_ok);
    CHECK(cond.out.find("condition.S.W2") != std::string::npos);
    CHECK(run({"condition", test::fixture_path("example_r3.pk"), "--kind", "X"}).code == exit_input_error);
    Run sel = run({"check", test::fixture_path("broken_phi.pk"), "--select", "axiom.eta_xi,axiom.xi_unit"});
    CHECK(sel.code == exit_ok);
    Run fac = run({"factors", "--n", "3"});
    CHECK(fac.code == exit_ok);
    CHECK(fac.out.find("warped_r7") != std::string::npos);
}
