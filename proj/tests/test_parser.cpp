#include <doctest.h>

#include "pk/expr_parser.hpp"

using namespace pk;

namespace {

Symbols chart() { return make_symbols({"x", "y", "z"}); }

ParseError parse_failure(std::string_view text) {
    try {
        parse_scalar(text, chart());
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for '" << std::string(text) << "'");
    return ParseError(ErrorKind::syntax, 0, 0, "");
}

}  // namespace

TEST_CASE("tokenizer") {
    auto toks = tokenize("3/4 x + d/dy # trailing", 5);
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].kind == TokKind::number);
    CHECK(toks[0].number == Rational(3, 4));
    CHECK(toks[1].kind == TokKind::ident);
    CHECK(toks[1].column == 5);
    CHECK(toks[2].kind == TokKind::plus);
    CHECK(toks[3].kind == TokKind::deriv);
    CHECK(toks[3].text == "y");
    CHECK(toks[4].kind == TokKind::end);
    CHECK(toks[0].line == 5);
    CHECK(tokenize("phi E1 -> E2", 1)[2].kind == TokKind::arrow);
}

TEST_CASE("scalar expressions") {
    Symbols s = chart();
    ScalarExpr x = ScalarExpr::variable(s, "x");
    ScalarExpr y = ScalarExpr::variable(s, "y");
    ScalarExpr ez = ScalarExpr::exp(s, LinearForm::variable(2));
    CHECK(parse_scalar("2 x y", s) == x * y.scaled(2));
    CHECK(parse_scalar("2*x^2 - exp(-2*z)", s) == x.pow(2).scaled(2) - ez.inverse().pow(2));
    CHECK(parse_scalar("-(x + 1)^2", s) == -(x + 1).pow(2));
    CHECK(parse_scalar("exp(z) exp(z)", s) == ez.pow(2));
    CHECK(parse_scalar("exp(1/2 z + 1/2 z)", s) == ez);
    CHECK(parse_scalar("1/2 x", s) == x.scaled(Rational(1, 2)));
    CHECK(parse_scalar("exp(0)", s) == ScalarExpr(1));
}

TEST_CASE("positioned errors") {
    ParseError w = parse_failure("x + w");
    CHECK(w.kind() == ErrorKind::semantic);
    CHECK(w.line() == 1);
    CHECK(w.column() == 5);
    CHECK(w.message() == "unknown identifier 'w'");

    CHECK(parse_failure("x $ y").kind() == ErrorKind::lexical);
    CHECK(parse_failure("x $ y").column() == 3);
    CHECK(parse_failure("1/0").kind() == ErrorKind::lexical);
    CHECK(parse_failure("(x + y").kind() == ErrorKind::syntax);
    CHECK(parse_failure("x +").kind() == ErrorKind::syntax);
    CHECK(parse_failure("x^y").kind() == ErrorKind::syntax);
    CHECK(parse_failure("exp(x y)").kind() == ErrorKind::semantic);
    CHECK(parse_failure("exp(x + 1)").kind() == ErrorKind::semantic);
    CHECK(parse_failure("d/dx").kind() == ErrorKind::semantic);
}
