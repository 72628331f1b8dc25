#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pk/scalar.hpp"

namespace pk {

enum class ErrorKind { lexical, syntax, semantic };

const char* to_string(ErrorKind k);

// Error positioned in the source text (1-based line and column).
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, int line, int column, const std::string& message);

    ErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    ErrorKind kind_;
    int line_;
    int column_;
    std::string message_;
};

enum class TokKind { number, ident, deriv, plus, minus, star, caret, lparen, rparen, arrow, equals, end };

struct Token {
    TokKind kind = TokKind::end;
    std::string text;  // identifier name, coordinate of d/d<coord>, or raw spelling
    Rational number;
    int line = 0;
    int column = 0;
};

// Splits one line into tokens; '#' starts a comment. `p/q` with digits on
// both sides is a single rational literal, `d/d<ident>` a derivation atom.
std::vector<Token> tokenize(std::string_view text, int line);

// Linear combination over a finite basis with ScalarExpr coefficients, plus
// a pure scalar part. A value is "vectorial" once a basis atom took part.
struct Combo {
    ScalarExpr scalar;
    std::vector<ScalarExpr> parts;
    bool vectorial = false;
};

// Meaning of an identifier or d/d<coord> atom in the current context.
using Resolved = std::variant<ScalarExpr, std::size_t>;  // scalar or basis index
using Resolver = std::function<std::optional<Resolved>(const Token&)>;

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := unary (['*'] unary)*          juxtaposition multiplies
//   unary  := ('+'|'-') unary | power
//   power  := primary ('^' integer)?
//   primary:= number | ident | d/d<coord> | 'exp' '(' expr ')' | '(' expr ')'
class ExprParser {
public:
    ExprParser(const std::vector<Token>& tokens, std::size_t pos, Symbols symbols,
               std::size_t basis_size, Resolver resolve);

    Combo parse_expr();
    std::size_t position() const { return pos_; }
    const Token& peek() const { return tokens_[pos_]; }

private:
    Combo parse_term();
    Combo parse_unary();
    Combo parse_power();
    Combo parse_primary();
    bool starts_primary() const;
    Combo scalar_combo(ScalarExpr s) const;
    Combo multiply(const Combo& a, const Combo& b, const Token& at) const;

    const std::vector<Token>& tokens_;
    std::size_t pos_;
    Symbols symbols_;
    std::size_t basis_size_;
    Resolver resolve_;
};

// Resolver for plain scalar expressions: every symbol of the table.
Resolver scalar_resolver(const Symbols& symbols);

// Parses a whole line of scalar-expression text.
ScalarExpr parse_scalar(std::string_view text, const Symbols& symbols);

}  // namespace pk
