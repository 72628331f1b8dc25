#include "pk/expr_parser.hpp"

#include <cctype>

namespace pk {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::lexical: return "lexical error";
        case ErrorKind::syntax: return "syntax error";
        case ErrorKind::semantic: return "semantic error";
    }
    return "error";
}

ParseError::ParseError(ErrorKind kind, int line, int column, const std::string& message)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + pk::to_string(kind) +
            ": " + message),
      kind_(kind), line_(line), column_(column), message_(message) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, int line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto col = [&](std::size_t at) { return static_cast<int>(at) + 1; };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.column = col(i);
        if (digit(c)) {
            std::size_t j = i;
            while (j < text.size() && digit(text[j])) ++j;
            std::string num(text.substr(i, j - i));
            if (j + 1 < text.size() && text[j] == '/' && digit(text[j + 1])) {
                std::size_t k = j + 1;
                while (k < text.size() && digit(text[k])) ++k;
                std::string den(text.substr(j + 1, k - j - 1));
                if (mpz_class(den) == 0)
                    throw ParseError(ErrorKind::lexical, line, col(i), "zero denominator");
                num += "/" + den;
                j = k;
            }
            if (j < text.size() && ident_char(text[j]))
                throw ParseError(ErrorKind::lexical, line, col(j), "malformed number");
            t.kind = TokKind::number;
            t.text = num;
            t.number = Rational(num);
            t.number.canonicalize();
            i = j;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word(text.substr(i, j - i));
            if (word == "d" && j + 1 < text.size() && text[j] == '/' && text[j + 1] == 'd') {
                std::size_t k = j + 2;
                if (k >= text.size() || !ident_start(text[k]))
                    throw ParseError(ErrorKind::lexical, line, col(j + 2),
                                     "expected a coordinate after d/d");
                std::size_t m = k;
                while (m < text.size() && ident_char(text[m])) ++m;
                t.kind = TokKind::deriv;
                t.text = std::string(text.substr(k, m - k));
                i = m;
            } else {
                t.kind = TokKind::ident;
                t.text = word;
                i = j;
            }
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = TokKind::arrow;
            t.text = "->";
            i += 2;
        } else {
            switch (c) {
                case '+': t.kind = TokKind::plus; break;
                case '-': t.kind = TokKind::minus; break;
                case '*': t.kind = TokKind::star; break;
                case '^': t.kind = TokKind::caret; break;
                case '(': t.kind = TokKind::lparen; break;
                case ')': t.kind = TokKind::rparen; break;
                case '=': t.kind = TokKind::equals; break;
                case '/':
                    throw ParseError(ErrorKind::lexical, line, col(i),
                                     "division is only allowed inside rational literals p/q");
                default:
                    throw ParseError(ErrorKind::lexical, line, col(i),
                                     std::string("unexpected character '") + c + "'");
            }
            t.text = std::string(1, c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = TokKind::end;
    end.line = line;
    end.column = col(text.size());
    out.push_back(end);
    return out;
}

ExprParser::ExprParser(const std::vector<Token>& tokens, std::size_t pos, Symbols symbols,
                       std::size_t basis_size, Resolver resolve)
    : tokens_(tokens), pos_(pos), symbols_(std::move(symbols)), basis_size_(basis_size),
      resolve_(std::move(resolve)) {}

Combo ExprParser::scalar_combo(ScalarExpr s) const {
    Combo c;
    c.scalar = std::move(s);
    c.parts.assign(basis_size_, ScalarExpr());
    return c;
}

namespace {

void add_into(Combo& a, const Combo& b, bool subtract) {
    if (subtract) {
        a.scalar -= b.scalar;
        for (std::size_t i = 0; i < a.parts.size(); ++i) a.parts[i] -= b.parts[i];
    } else {
        a.scalar += b.scalar;
        for (std::size_t i = 0; i < a.parts.size(); ++i) a.parts[i] += b.parts[i];
    }
    a.vectorial = a.vectorial || b.vectorial;
}

}  // namespace

Combo ExprParser::multiply(const Combo& a, const Combo& b, const Token& at) const {
    if (a.vectorial && b.vectorial)
        throw ParseError(ErrorKind::semantic, at.line, at.column,
                         "product of two basis elements is not linear");
    if (b.vectorial) return multiply(b, a, at);
    Combo r = scalar_combo(a.scalar * b.scalar);
    for (std::size_t i = 0; i < r.parts.size(); ++i) r.parts[i] = a.parts[i] * b.scalar;
    r.vectorial = a.vectorial;
    return r;
}

Combo ExprParser::parse_expr() {
    Combo acc = parse_term();
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
        bool minus = peek().kind == TokKind::minus;
        ++pos_;
        Combo rhs = parse_term();
        add_into(acc, rhs, minus);
    }
    return acc;
}

bool ExprParser::starts_primary() const {
    switch (peek().kind) {
        case TokKind::number:
        case TokKind::ident:
        case TokKind::deriv:
        case TokKind::lparen: return true;
        default: return false;
    }
}

Combo ExprParser::parse_term() {
    Combo acc = parse_unary();
    for (;;) {
        if (peek().kind == TokKind::star) {
            Token at = peek();
            ++pos_;
            acc = multiply(acc, parse_unary(), at);
        } else if (starts_primary()) {
            Token at = peek();
            acc = multiply(acc, parse_unary(), at);
        } else {
            return acc;
        }
    }
}

Combo ExprParser::parse_unary() {
    if (peek().kind == TokKind::minus) {
        ++pos_;
        Combo c = parse_unary();
        Combo zero = scalar_combo(ScalarExpr());
        add_into(zero, c, true);
        return zero;
    }
    if (peek().kind == TokKind::plus) {
        ++pos_;
        return parse_unary();
    }
    return parse_power();
}

Combo ExprParser::parse_power() {
    Combo base = parse_primary();
    if (peek().kind != TokKind::caret) return base;
    Token caret = peek();
    ++pos_;
    const Token& e = peek();
    if (e.kind != TokKind::number || e.number.get_den() != 1 || e.number < 0)
        throw ParseError(ErrorKind::syntax, e.line, e.column,
                         "exponent must be a non-negative integer");
    if (base.vectorial)
        throw ParseError(ErrorKind::semantic, caret.line, caret.column,
                         "cannot raise a basis element to a power");
    if (e.number > 64)
        throw ParseError(ErrorKind::semantic, e.line, e.column, "exponent too large");
    unsigned k = static_cast<unsigned>(e.number.get_num().get_ui());
    ++pos_;
    return scalar_combo(base.scalar.pow(k));
}

Combo ExprParser::parse_primary() {
    const Token t = peek();
    switch (t.kind) {
        case TokKind::number:
            ++pos_;
            return scalar_combo(ScalarExpr(t.number));
        case TokKind::lparen: {
            ++pos_;
            Combo inner = parse_expr();
            if (peek().kind != TokKind::rparen)
                throw ParseError(ErrorKind::syntax, peek().line, peek().column, "expected ')'");
            ++pos_;
            return inner;
        }
        case TokKind::ident:
        case TokKind::deriv: {
            if (t.kind == TokKind::ident && t.text == "exp" &&
                tokens_[pos_ + 1].kind == TokKind::lparen) {
                pos_ += 2;
                Combo arg = parse_expr();
                if (peek().kind != TokKind::rparen)
                    throw ParseError(ErrorKind::syntax, peek().line, peek().column, "expected ')'");
                ++pos_;
                if (arg.vectorial)
                    throw ParseError(ErrorKind::semantic, t.line, t.column,
                                     "exp() of a basis element");
                LinearForm form;
                for (const auto& term : arg.scalar.terms()) {
                    const auto& powers = term.monomial.powers();
                    if (!term.exponent.empty() || powers.size() != 1 || powers[0].second != 1 ||
                        !symbols_ || !symbols_->is_coord(powers[0].first))
                        throw ParseError(ErrorKind::semantic, t.line, t.column,
                                         "exp() argument must be a linear form in the coordinates "
                                         "without constant term");
                    form = form + LinearForm::variable(powers[0].first, term.coeff);
                }
                return scalar_combo(ScalarExpr::exp(symbols_, form));
            }
            ++pos_;
            auto r = resolve_(t);
            if (!r) {
                std::string what = t.kind == TokKind::deriv ? "d/d" + t.text : t.text;
                throw ParseError(ErrorKind::semantic, t.line, t.column,
                                 "unknown identifier '" + what + "'");
            }
            if (auto* s = std::get_if<ScalarExpr>(&*r)) return scalar_combo(*s);
            Combo c = scalar_combo(ScalarExpr());
            c.parts.at(std::get<std::size_t>(*r)) = ScalarExpr(1);
            c.vectorial = true;
            return c;
        }
        case TokKind::end:
            throw ParseError(ErrorKind::syntax, t.line, t.column, "unexpected end of line");
        default:
            throw ParseError(ErrorKind::syntax, t.line, t.column,
                             "unexpected '" + t.text + "'");
    }
}

Resolver scalar_resolver(const Symbols& symbols) {
    return [symbols](const Token& t) -> std::optional<Resolved> {
        if (t.kind != TokKind::ident || !symbols) return std::nullopt;
        auto idx = symbols->find(t.text);
        if (!idx) return std::nullopt;
        return Resolved{ScalarExpr::variable(symbols, *idx)};
    };
}

ScalarExpr parse_scalar(std::string_view text, const Symbols& symbols) {
    auto tokens = tokenize(text, 1);
    ExprParser p(tokens, 0, symbols, 0, scalar_resolver(symbols));
    Combo c = p.parse_expr();
    if (p.peek().kind != TokKind::end)
        throw ParseError(ErrorKind::syntax, p.peek().line, p.peek().column,
                         "unexpected '" + p.peek().text + "'");
    return c.scalar;
}

}  // namespace pk
