#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include <json.hpp>

#include "pk/dsl.hpp"
#include "support.hpp"

using namespace pk;

namespace {

const char* const all_fixtures[] = {"example_r3.pk", "example_r5.pk", "flat_r3.pk", "broken_phi.pk"};

ParseError parse_failure(const std::string& text) {
    try {
        parse_manifold(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("document accepted:\n" << text);
    return ParseError(ErrorKind::syntax, 0, 0, "");
}

const std::string minimal =
    "manifold m\n"
    "coords x y z\n"
    "frame E1 = exp(z) d/dx\n"
    "frame E2 = exp(z) d/dy\n"
    "frame E3 = -d/dz\n"
    "gram diag 1 -1 1\n"
    "phi E1 -> E2\n"
    "phi E2 -> E1\n"
    "phi E3 -> 0\n"
    "xi = E3\n"
    "n = 1\n";

const CheckReport* find(const SuiteResult& r, const std::string& name) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckReport& c) { return c.name == name; });
    return it == r.checks.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("parsing the three-dimensional fixture") {
    ManifoldDocument doc = test::load_document("example_r3.pk");
    CHECK(doc.name == "example_r3");
    CHECK(doc.dimension() == 3);
    CHECK(doc.n == 1);
    CHECK(doc.frame_names == std::vector<std::string>{"E1", "E2", "E3"});
    CHECK(doc.references.size() == 19);
    CHECK(doc.eta.has_value());
    CHECK(doc.references.back().kind == ReferenceValue::Kind::soliton);
    CHECK(doc.references.back().lambda == Rational(-1));
    CHECK(doc.references.back().mu == Rational(3));
}

TEST_CASE("the fixture file describes the generated warped structure") {
    ParacontactStructure a = test::load_structure("example_r3.pk");
    ParacontactStructure b = make_warped_fixture(1);
    CHECK(a.frame.members() == b.frame.members());
    CHECK(a.frame.gram() == b.frame.gram());
    CHECK(a.phi == b.phi);
    CHECK(a.xi == b.xi);
    CHECK(a.eta == b.eta);
    CHECK(a.g == b.g);
}

TEST_CASE("printing and parsing round-trip") {
    for (const char* name : all_fixtures) {
        CAPTURE(name);
        ManifoldDocument doc = test::load_document(name);
        std::string printed = print_manifold(doc);
        ManifoldDocument again = parse_manifold(printed);
        CHECK(again == doc);
        CHECK(print_manifold(again) == printed);
    }
    ManifoldDocument m = parse_manifold(minimal);
    CHECK_FALSE(m.eta.has_value());
    CHECK(parse_manifold(print_manifold(m)) == m);
}

TEST_CASE("malformed corpus yields positioned errors") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(test::fixture_path("malformed"))) {
        CAPTURE(entry.path().string());
        std::ifstream in(entry.path());
        std::ostringstream ss;
        ss << in.rdbuf();
        ParseError e = parse_failure(ss.str());
        CHECK(e.line() > 0);
        CHECK(e.column() > 0);
        ++count;
    }
    CHECK(count >= 5);
}

TEST_CASE("specific diagnostics") {
    std::string even = minimal;
    even.replace(even.find("coords x y z"), 12, "coords x y");
    ParseError e = parse_failure(even);
    CHECK(e.kind() == ErrorKind::semantic);
    CHECK(e.line() == 2);
    CHECK(e.message() == "dimension must be odd, got 2");

    std::string unknown = minimal;
    unknown.replace(unknown.find("exp(z) d/dx"), 11, "exp(w) d/dx");
    ParseError u = parse_failure(unknown);
    CHECK(u.line() == 3);
    CHECK(u.column() == 16);
    CHECK(u.message() == "unknown identifier 'w'");

    std::string missing = minimal;
    missing.erase(missing.find("xi = E3\n"), 8);
    ParseError m = parse_failure(missing);
    CHECK(m.message() == "missing 'xi' section");

    ParseError dup = parse_failure(minimal + "n = 1\n");
    CHECK(dup.line() == 12);

    ParseError vec = parse_failure(minimal + "reference connection E1 E1 = E3 E3\n");
    CHECK(vec.line() == 12);
}

TEST_CASE("full suite on the fixtures") {
    for (const char* name : {"example_r3.pk", "example_r5.pk"}) {
        CAPTURE(name);
        SuiteResult r = run_suite(test::load_document(name));
        CHECK_FALSE(r.failed());
        for (const auto& c : r.checks) {
            INFO(c.name << " " << c.witness << " " << c.detail);
            CHECK(c.passed());
        }
        REQUIRE(r.soliton.has_value());
        CHECK(r.soliton->mu == Rational(1));
    }
}

TEST_CASE("reference comparisons are reported, not enforced") {
    SuiteResult r = run_suite(test::load_document("example_r3.pk"));
    std::set<std::string> conflicts;
    for (const auto& n : r.notes)
        if (!n.agrees) conflicts.insert(n.item);
    CHECK(conflicts == std::set<std::string>{"nabla_E3 E1", "nabla_E3 E2", "R(E3,E1)E1", "R(E3,E2)E2", "S(E1,E1)",
                                             "S(E2,E2)", "soliton (lambda, mu)"});
    auto sol = std::find_if(r.notes.begin(), r.notes.end(), [](const Note& n) { return n.item == "soliton (lambda, mu)"; });
    REQUIRE(sol != r.notes.end());
    CHECK(sol->computed == "(1, 1)");
    CHECK(sol->reference == "(-1, 3)");
    CHECK_FALSE(r.failed());
}

TEST_CASE("selection and dependencies") {
    ManifoldDocument broken = test::load_document("broken_phi.pk");
    SuiteResult axioms = run_suite(broken, {"axioms"});
    CHECK(axioms.checks.size() == 11);
    CHECK(axioms.failed());
    for (const auto& c : axioms.checks) CHECK(c.name.rfind("axiom.", 0) == 0);

    SuiteResult soliton = run_suite(broken, {"soliton.solve"});
    REQUIRE(soliton.checks.size() == 1);
    CHECK(soliton.checks[0].status == Status::skipped);
    CHECK(soliton.checks[0].detail.find("dependency failed") == 0);

    SuiteResult one = run_suite(test::load_document("example_r3.pk"), {"identity.nijenhuis"});
    REQUIRE(one.checks.size() == 1);
    CHECK(one.checks[0].passed());

    SuiteResult flat = run_suite(test::load_document("flat_r3.pk"));
    CHECK(flat.failed());
    CHECK(find(flat, "para_kenmotsu")->status == Status::fail);
}

TEST_CASE("factor suite") {
    for (int n : {1, 2, 3}) {
        SuiteResult r = run_factor_suite(n);
        CHECK(r.manifold == "warped_r" + std::to_string(2 * n + 1));
        CHECK_FALSE(r.failed());
        CHECK(find(r, "factor.S.W2") != nullptr);
    }
}

TEST_CASE("reports") {
    SuiteResult empty;
    empty.manifold = "none";
    auto j = nlohmann::json::parse(emit_report(empty, ReportFormat::json));
    CHECK(j["checks"].empty());
    CHECK(j["soliton"].is_null());
    CHECK(j["manifold"] == "none");

    ManifoldDocument flat = test::load_document("flat_r3.pk");
    SuiteResult r = run_suite(flat, {"para_kenmotsu"});
    std::string json = emit_report(r, ReportFormat::json);
    std::string text = emit_report(r, ReportFormat::text);
    CHECK(json == emit_report(run_suite(flat, {"para_kenmotsu"}), ReportFormat::json));
    auto parsed = nlohmann::json::parse(json);
    REQUIRE(parsed["checks"].size() == 1);
    CHECK(parsed["checks"][0]["status"] == "fail");
    std::string witness = parsed["checks"][0]["witness"];
    CHECK_FALSE(witness.empty());
    CHECK(text.find(witness) != std::string::npos);
    CHECK(text.find("FAIL para_kenmotsu") != std::string::npos);
}
