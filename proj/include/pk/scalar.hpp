#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pk {

using Rational = mpq_class;

std::string to_string(const Rational& q);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
public:
    ChartMismatch() : Error("operands live on different charts") {}
};

class NonInvertible : public Error {
public:
    explicit NonInvertible(const std::string& what)
        : Error("non-invertible expression: " + what) {}
};

class UnknownCoordinate : public Error {
public:
    explicit UnknownCoordinate(const std::string& name)
        : Error("unknown coordinate '" + name + "'") {}
};

class MissingAssignment : public Error {
public:
    explicit MissingAssignment(const std::string& name)
        : Error("no value assigned to '" + name + "'") {}
};

// Names of the variables a ScalarExpr may mention. The first num_coords are
// chart coordinates (differentiable); the rest are formal parameters with
// zero derivative in every direction.
class SymbolTable {
public:
    SymbolTable(std::vector<std::string> coords, std::vector<std::string> params = {});

    std::size_t size() const { return names_.size(); }
    std::size_t num_coords() const { return num_coords_; }
    bool is_coord(int var) const { return var >= 0 && static_cast<std::size_t>(var) < num_coords_; }
    const std::string& name(int var) const { return names_.at(static_cast<std::size_t>(var)); }
    std::optional<int> find(const std::string& name) const;
    int index_of(const std::string& name) const;  // throws UnknownCoordinate

    bool operator==(const SymbolTable& other) const {
        return names_ == other.names_ && num_coords_ == other.num_coords_;
    }

private:
    std::vector<std::string> names_;
    std::size_t num_coords_;
};

using Symbols = std::shared_ptr<const SymbolTable>;

Symbols make_symbols(std::vector<std::string> coords, std::vector<std::string> params = {});

// Homogeneous linear form sum_i c_i x_i, the argument of exp(). Zero
// coefficients are never stored.
class LinearForm {
public:
    LinearForm() = default;
    static LinearForm variable(int var, const Rational& c = 1);

    const std::vector<std::pair<int, Rational>>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    Rational coeff(int var) const;

    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator-() const;

    friend bool operator==(const LinearForm& a, const LinearForm& b);
    friend bool operator<(const LinearForm& a, const LinearForm& b);

private:
    std::vector<std::pair<int, Rational>> coeffs_;  // sorted by var
};

// Product of non-negative integer powers of variables; empty means 1.
class Monomial {
public:
    Monomial() = default;
    static Monomial variable(int var, unsigned power = 1);

    const std::vector<std::pair<int, unsigned>>& powers() const { return powers_; }
    bool empty() const { return powers_.empty(); }
    unsigned degree() const;
    unsigned power(int var) const;

    Monomial operator*(const Monomial& o) const;
    // Lowers the power of var by one; power(var) must be positive.
    Monomial reduced(int var) const;
    Monomial without(int var) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }
    // Graded order: higher total degree first, then lexicographic.
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    std::vector<std::pair<int, unsigned>> powers_;  // sorted by var, powers > 0
};

struct TermKey {
    LinearForm exponent;
    Monomial monomial;

    friend bool operator==(const TermKey& a, const TermKey& b) {
        return a.exponent == b.exponent && a.monomial == b.monomial;
    }
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.exponent < b.exponent) return true;
        if (b.exponent < a.exponent) return false;
        return a.monomial < b.monomial;
    }
};

struct Term {
    Rational coeff;
    Monomial monomial;
    LinearForm exponent;
};

// Exact value sum_i q_i e^{r_i} of an expression at a rational point.
struct ExactValue {
    std::vector<std::pair<Rational, Rational>> terms;  // (q, r), sorted by r, q != 0

    bool operator==(const ExactValue& o) const { return terms == o.terms; }
    double approx() const;
    std::string to_string() const;
};

// Element of Q[vars] (x) exp(linear forms): a finite sum of
// coeff * monomial * exp(form) kept in canonical order, so equality is
// structural.
class ScalarExpr {
public:
    ScalarExpr() = default;
    ScalarExpr(const Rational& q);  // NOLINT: constants convert implicitly
    ScalarExpr(long q) : ScalarExpr(Rational(q)) {}  // NOLINT
    ScalarExpr(int q) : ScalarExpr(Rational(q)) {}   // NOLINT

    static ScalarExpr variable(const Symbols& symbols, int var);
    static ScalarExpr variable(const Symbols& symbols, const std::string& name);
    static ScalarExpr exp(const Symbols& symbols, LinearForm form);
    static ScalarExpr term(const Symbols& symbols, const Rational& coeff, Monomial m,
                           LinearForm e);

    const Symbols& symbols() const { return symbols_; }
    std::size_t num_terms() const { return terms_.size(); }
    std::vector<Term> terms() const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<Rational> constant_value() const;
    bool is_single_term() const { return terms_.size() == 1; }

    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    ScalarExpr& operator*=(const ScalarExpr& o);
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);

    ScalarExpr scaled(const Rational& q) const;
    ScalarExpr pow(unsigned k) const;

    // q e^{l} -> q^{-1} e^{-l}; anything else throws NonInvertible.
    ScalarExpr inverse() const;
    ScalarExpr partial(int var) const;
    ScalarExpr partial(const std::string& coord) const;

    // Replaces a polynomial variable by an expression. The variable must
    // not occur inside an exponent.
    ScalarExpr substitute(int var, const ScalarExpr& value) const;
    ExactValue evaluate(const std::map<std::string, Rational>& point) const;

    std::string to_string() const;

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

private:
    void adopt(const Symbols& other);
    void add_term(const TermKey& key, const Rational& c);

    Symbols symbols_;
    std::map<TermKey, Rational> terms_;
};

ScalarExpr invert(const ScalarExpr& a);
ScalarExpr partial_diff(const ScalarExpr& a, const std::string& coord);
inline bool is_zero(const ScalarExpr& a) { return a.is_zero(); }
inline bool equals(const ScalarExpr& a, const ScalarExpr& b) { return (a - b).is_zero(); }
ExactValue substitute_rational(const ScalarExpr& a, const std::map<std::string, Rational>& point);

// Rational roots of a univariate polynomial in var (all other variables
// must be absent). Returned sorted and without multiplicity.
std::vector<Rational> rational_roots(const ScalarExpr& poly, int var);

}  // namespace pk
