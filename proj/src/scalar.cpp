#include "pk/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pk {

namespace {

// GMP arithmetic requires canonical operands; p/q built from two integers
// is not reduced automatically.
Rational canonical(Rational q) {
    q.canonicalize();
    return q;
}

}  // namespace

std::string to_string(const Rational& q) { return canonical(q).get_str(); }

SymbolTable::SymbolTable(std::vector<std::string> coords, std::vector<std::string> params)
    : names_(std::move(coords)), num_coords_(names_.size()) {
    names_.insert(names_.end(), params.begin(), params.end());
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw Error("duplicate symbol '" + names_[i] + "'");
}

std::optional<int> SymbolTable::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<int>(it - names_.begin());
}

int SymbolTable::index_of(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw UnknownCoordinate(name);
    return *idx;
}

Symbols make_symbols(std::vector<std::string> coords, std::vector<std::string> params) {
    return std::make_shared<const SymbolTable>(std::move(coords), std::move(params));
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm LinearForm::variable(int var, const Rational& c) {
    LinearForm f;
    if (c != 0) f.coeffs_.emplace_back(var, canonical(c));
    return f;
}

Rational LinearForm::coeff(int var) const {
    for (const auto& [v, c] : coeffs_)
        if (v == var) return c;
    return 0;
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
    LinearForm r;
    auto a = coeffs_.begin();
    auto b = o.coeffs_.begin();
    while (a != coeffs_.end() || b != o.coeffs_.end()) {
        if (b == o.coeffs_.end() || (a != coeffs_.end() && a->first < b->first)) {
            r.coeffs_.push_back(*a++);
        } else if (a == coeffs_.end() || b->first < a->first) {
            r.coeffs_.push_back(*b++);
        } else {
            Rational c = a->second + b->second;
            if (c != 0) r.coeffs_.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    return r;
}

LinearForm LinearForm::operator-() const {
    LinearForm r = *this;
    for (auto& [v, c] : r.coeffs_) c = -c;
    return r;
}

bool operator==(const LinearForm& a, const LinearForm& b) { return a.coeffs_ == b.coeffs_; }

bool operator<(const LinearForm& a, const LinearForm& b) {
    return std::lexicographical_compare(
        a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int var, unsigned power) {
    Monomial m;
    if (power > 0) m.powers_.emplace_back(var, power);
    return m;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& [v, p] : powers_) d += p;
    return d;
}

unsigned Monomial::power(int var) const {
    for (const auto& [v, p] : powers_)
        if (v == var) return p;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    auto a = powers_.begin();
    auto b = o.powers_.begin();
    while (a != powers_.end() || b != o.powers_.end()) {
        if (b == o.powers_.end() || (a != powers_.end() && a->first < b->first)) {
            r.powers_.push_back(*a++);
        } else if (a == powers_.end() || b->first < a->first) {
            r.powers_.push_back(*b++);
        } else {
            r.powers_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::reduced(int var) const {
    Monomial r = *this;
    for (auto it = r.powers_.begin(); it != r.powers_.end(); ++it) {
        if (it->first == var) {
            if (--it->second == 0) r.powers_.erase(it);
            return r;
        }
    }
    throw Error("monomial does not contain the variable");
}

Monomial Monomial::without(int var) const {
    Monomial r = *this;
    std::erase_if(r.powers_, [var](const auto& vp) { return vp.first == var; });
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    unsigned da = a.degree();
    unsigned db = b.degree();
    if (da != db) return da > db;
    // Among equal degrees, the monomial richer in earlier variables first.
    auto ia = a.powers_.begin();
    auto ib = b.powers_.begin();
    for (; ia != a.powers_.end() && ib != b.powers_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
    }
    return false;
}

// ---------------------------------------------------------------------------
// ExactValue

double ExactValue::approx() const {
    double s = 0.0;
    for (const auto& [q, r] : terms) s += q.get_d() * std::exp(r.get_d());
    return s;
}

std::string ExactValue::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [q, r] : terms) {
        Rational mag = abs(q);
        if (!first) out += q < 0 ? " - " : " + ";
        else if (q < 0) out += "-";
        first = false;
        if (r == 0) {
            out += pk::to_string(mag);
        } else {
            if (mag != 1) out += pk::to_string(mag) + "*";
            out += "e^(" + pk::to_string(r) + ")";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ScalarExpr

ScalarExpr::ScalarExpr(const Rational& q) {
    if (q != 0) terms_.emplace(TermKey{}, canonical(q));
}

ScalarExpr ScalarExpr::variable(const Symbols& symbols, int var) {
    if (!symbols || var < 0 || static_cast<std::size_t>(var) >= symbols->size())
        throw Error("variable index out of range");
    return term(symbols, 1, Monomial::variable(var), {});
}

ScalarExpr ScalarExpr::variable(const Symbols& symbols, const std::string& name) {
    return variable(symbols, symbols->index_of(name));
}

ScalarExpr ScalarExpr::exp(const Symbols& symbols, LinearForm form) {
    return term(symbols, 1, {}, std::move(form));
}

ScalarExpr ScalarExpr::term(const Symbols& symbols, const Rational& coeff, Monomial m,
                            LinearForm e) {
    for (const auto& [v, c] : e.coeffs())
        if (!symbols || !symbols->is_coord(v))
            throw Error("exponent must be a linear form in chart coordinates");
    ScalarExpr r;
    r.symbols_ = symbols;
    if (coeff != 0) r.terms_.emplace(TermKey{std::move(e), std::move(m)}, canonical(coeff));
    return r;
}

std::vector<Term> ScalarExpr::terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back(Term{c, k.monomial, k.exponent});
    return out;
}

bool ScalarExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == TermKey{});
}

std::optional<Rational> ScalarExpr::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (is_constant()) return terms_.begin()->second;
    return std::nullopt;
}

void ScalarExpr::adopt(const Symbols& other) {
    if (!other || symbols_ == other) return;
    if (!symbols_) {
        symbols_ = other;
        return;
    }
    if (!(*symbols_ == *other)) throw ChartMismatch();
}

void ScalarExpr::add_term(const TermKey& key, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    adopt(o.symbols_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
    adopt(o.symbols_);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r;
    r.symbols_ = a.symbols_;
    r.adopt(b.symbols_);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            r.add_term(TermKey{ka.exponent + kb.exponent, ka.monomial * kb.monomial}, ca * cb);
    return r;
}

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) { return *this = *this * o; }

ScalarExpr ScalarExpr::scaled(const Rational& q) const {
    ScalarExpr r;
    r.symbols_ = symbols_;
    if (q == 0) return r;
    r.terms_ = terms_;
    Rational f = canonical(q);
    for (auto& [k, c] : r.terms_) c *= f;
    return r;
}

ScalarExpr ScalarExpr::pow(unsigned k) const {
    ScalarExpr result(1);
    result.symbols_ = symbols_;
    ScalarExpr base = *this;
    while (k > 0) {
        if (k & 1u) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

ScalarExpr ScalarExpr::inverse() const {
    if (terms_.size() != 1 || !terms_.begin()->first.monomial.empty())
        throw NonInvertible(to_string());
    const auto& [k, c] = *terms_.begin();
    ScalarExpr r;
    r.symbols_ = symbols_;
    r.terms_.emplace(TermKey{-k.exponent, {}}, 1 / c);
    return r;
}

ScalarExpr ScalarExpr::partial(int var) const {
    ScalarExpr r;
    r.symbols_ = symbols_;
    if (terms_.empty() || !symbols_) return r;  // symbol-free values are constants
    if (!symbols_->is_coord(var)) {
        if (var >= 0 && static_cast<std::size_t>(var) < symbols_->size())
            return r;  // formal parameters are constants
        throw UnknownCoordinate(var >= 0 ? "#" + std::to_string(var) : "?");
    }
    for (const auto& [k, c] : terms_) {
        Rational ec = k.exponent.coeff(var);
        if (ec != 0) r.add_term(k, c * ec);
        unsigned p = k.monomial.power(var);
        if (p > 0) r.add_term(TermKey{k.exponent, k.monomial.reduced(var)}, c * p);
    }
    return r;
}

ScalarExpr ScalarExpr::partial(const std::string& coord) const {
    if (!symbols_) return ScalarExpr();
    auto idx = symbols_->find(coord);
    if (!idx || !symbols_->is_coord(*idx)) throw UnknownCoordinate(coord);
    return partial(*idx);
}

ScalarExpr ScalarExpr::substitute(int var, const ScalarExpr& value) const {
    ScalarExpr r;
    r.symbols_ = symbols_;
    r.adopt(value.symbols_);
    std::vector<ScalarExpr> powers{ScalarExpr(1)};
    for (const auto& [k, c] : terms_) {
        if (k.exponent.coeff(var) != 0)
            throw Error("cannot substitute a variable that occurs in an exponent");
        unsigned p = k.monomial.power(var);
        while (powers.size() <= p) powers.push_back(powers.back() * value);
        ScalarExpr rest = term(symbols_, c, k.monomial.without(var), k.exponent);
        r += rest * powers[p];
    }
    return r;
}

ExactValue ScalarExpr::evaluate(const std::map<std::string, Rational>& point) const {
    std::vector<std::optional<Rational>> assigned;
    if (symbols_) {
        for (std::size_t i = 0; i < symbols_->size(); ++i) {
            auto it = point.find(symbols_->name(static_cast<int>(i)));
            if (it == point.end())
                assigned.emplace_back();
            else
                assigned.emplace_back(canonical(it->second));
        }
    }
    // Only variables that occur need a value.
    auto value = [&](int v) -> const Rational& {
        const auto& q = assigned[static_cast<std::size_t>(v)];
        if (!q) throw MissingAssignment(symbols_->name(v));
        return *q;
    };
    std::map<Rational, Rational> acc;  // exponent value -> coefficient
    for (const auto& [k, c] : terms_) {
        Rational q = c;
        for (const auto& [v, p] : k.monomial.powers())
            for (unsigned i = 0; i < p; ++i) q *= value(v);
        Rational e = 0;
        for (const auto& [v, ec] : k.exponent.coeffs()) e += ec * value(v);
        acc[e] += q;
    }
    ExactValue out;
    for (const auto& [e, q] : acc)
        if (q != 0) out.terms.emplace_back(q, e);
    return out;
}

namespace {

std::string var_name(const Symbols& s, int v) {
    return s ? s->name(v) : "#" + std::to_string(v);
}

std::string form_string(const Symbols& s, const LinearForm& f) {
    std::string out;
    bool first = true;
    for (const auto& [v, c] : f.coeffs()) {
        Rational mag = abs(c);
        if (!first) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        first = false;
        if (mag != 1) out += to_string(mag) + "*";
        out += var_name(s, v);
    }
    return out;
}

}  // namespace

std::string ScalarExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        std::vector<std::string> factors;
        if (mag != 1 || (k.monomial.empty() && k.exponent.empty())) factors.push_back(pk::to_string(mag));
        for (const auto& [v, p] : k.monomial.powers())
            factors.push_back(p == 1 ? var_name(symbols_, v)
                                     : var_name(symbols_, v) + "^" + std::to_string(p));
        if (!k.exponent.empty()) factors.push_back("exp(" + form_string(symbols_, k.exponent) + ")");
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.symbols_ && b.symbols_ && a.symbols_ != b.symbols_ && !(*a.symbols_ == *b.symbols_))
        throw ChartMismatch();
    return a.terms_ == b.terms_;
}

ScalarExpr invert(const ScalarExpr& a) { return a.inverse(); }

ScalarExpr partial_diff(const ScalarExpr& a, const std::string& coord) { return a.partial(coord); }

ExactValue substitute_rational(const ScalarExpr& a, const std::map<std::string, Rational>& point) {
    return a.evaluate(point);
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) return out;
    if (n > 100000000) throw Error("coefficient too large for rational root search");
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

}  // namespace

std::vector<Rational> rational_roots(const ScalarExpr& poly, int var) {
    std::map<unsigned, Rational> coeff;
    for (const auto& t : poly.terms()) {
        if (!t.exponent.empty() || t.monomial.without(var) != Monomial())
            throw Error("not a univariate polynomial: " + poly.to_string());
        coeff[t.monomial.power(var)] += t.coeff;
    }
    std::vector<Rational> roots;
    if (coeff.empty()) throw Error("zero polynomial has every value as a root");
    if (coeff.begin()->first > 0) roots.push_back(0);
    unsigned low = coeff.begin()->first;
    unsigned high = coeff.rbegin()->first;
    mpz_class lcm = 1;
    for (const auto& [p, c] : coeff) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    auto integer = [&](unsigned p) {
        Rational c = coeff.count(p) ? coeff.at(p) * lcm : Rational(0);
        return mpz_class(c.get_num());
    };
    if (high > low) {
        for (const auto& num : divisors(integer(low))) {
            for (const auto& den : divisors(integer(high))) {
                for (int sign : {1, -1}) {
                    Rational cand(sign * num, den);
                    cand.canonicalize();
                    Rational value = 0;
                    for (const auto& [p, c] : coeff) {
                        Rational term = c;
                        for (unsigned i = 0; i < p; ++i) term *= cand;
                        value += term;
                    }
                    if (value == 0) roots.push_back(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace pk
