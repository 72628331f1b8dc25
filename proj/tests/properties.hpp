#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pk/curvature.hpp"
#include "pk/expr_parser.hpp"

namespace pk::test {

inline constexpr std::uint32_t property_seed = 20240917;
inline constexpr int property_cases = 100;

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    bool passed() const { return cases >= property_cases && failures == 0; }
};

class Gen {
public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(bool nonzero = true) {
        int p = 0;
        while (p == 0) {
            p = integer(-5, 5);
            if (!nonzero) break;
        }
        return Rational(p, integer(1, 3));
    }

    LinearForm form(std::size_t coords) {
        static const Rational choices[] = {Rational(0), Rational(0), Rational(1), Rational(-1), Rational(1, 2),
                                           Rational(-2)};
        LinearForm f;
        for (std::size_t i = 0; i < coords; ++i) {
            Rational c = choices[integer(0, 5)];
            if (c != 0) f = f + LinearForm::variable(static_cast<int>(i), c);
        }
        return f;
    }

    // A sum of up to three terms coeff * monomial * exp(form); exponents
    // only involve coordinates, monomials may involve any symbol.
    ScalarExpr expr(const Symbols& s) {
        ScalarExpr out;
        int terms = integer(0, 3);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            for (std::size_t v = 0; v < s->size(); ++v) {
                int p = integer(0, 4) - 2;
                if (p > 0) m = m * Monomial::variable(static_cast<int>(v), static_cast<unsigned>(p));
            }
            out += ScalarExpr::term(s, rational(), m, form(s->num_coords()));
        }
        return out;
    }

    VectorField field(const Symbols& s) {
        VectorField X;
        for (std::size_t i = 0; i < s->num_coords(); ++i) X.components.push_back(expr(s));
        return X;
    }

    // E_a = e^{l_a} sum_j B_aj d/dx_j with B invertible and a random
    // diagonal gram of +-1 entries.
    Frame frame(std::size_t dim) {
        std::vector<std::string> coords;
        for (std::size_t i = 0; i < dim; ++i) coords.push_back("u" + std::to_string(i + 1));
        Chart chart(coords);
        const Symbols& s = chart.symbols();
        for (;;) {
            Matrix b(dim, Vec(dim));
            for (auto& row : b)
                for (auto& e : row) e = ScalarExpr(integer(-2, 2));
            if (determinant(b).is_zero()) continue;
            std::vector<VectorField> members;
            for (std::size_t a = 0; a < dim; ++a) {
                ScalarExpr scale = ScalarExpr::exp(s, form(dim));
                VectorField X;
                for (std::size_t j = 0; j < dim; ++j) X.components.push_back(scale * b[a][j]);
                members.push_back(X);
            }
            Matrix gram(dim, Vec(dim, ScalarExpr(0)));
            for (std::size_t a = 0; a < dim; ++a) gram[a][a] = ScalarExpr(integer(0, 1) ? 1 : -1);
            return Frame(chart, members, gram);
        }
    }

private:
    std::mt19937 rng_;
};

template <typename F>
PropertyResult run_property(std::string name, std::uint32_t seed, int cases, F&& body) {
    PropertyResult r;
    r.name = std::move(name);
    Gen gen(seed);
    for (int i = 0; i < cases; ++i) {
        ++r.cases;
        std::string failure;
        try {
            failure = body(gen);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (!failure.empty()) {
            if (r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + failure;
        }
    }
    return r;
}

// Derivation, ring and canonical-form laws of the scalar ring.
inline PropertyResult ring_laws(int cases = 2 * property_cases) {
    Symbols s = make_symbols({"x", "y", "z"}, {"lambda"});
    return run_property("ring derivation and canonicality laws", property_seed, cases, [&](Gen& g) -> std::string {
        ScalarExpr f = g.expr(s), h = g.expr(s), k = g.expr(s);
        if (f + h != h + f) return "addition does not commute";
        if (f * h != h * f) return "multiplication does not commute";
        if ((f + h) + k != f + (h + k)) return "addition is not associative";
        if ((f * h) * k != f * (h * k)) return "multiplication is not associative";
        if (f * (h + k) != f * h + f * k) return "distributivity fails";
        if (!(f - f).is_zero()) return "f - f is not zero";
        if (f * ScalarExpr(1) != f) return "1 is not neutral";
        for (const char* c : {"x", "y", "z"}) {
            if ((f * h).partial(c) != f.partial(c) * h + f * h.partial(c)) return std::string("Leibniz fails in ") + c;
            if ((f + h).partial(c) != f.partial(c) + h.partial(c)) return std::string("partial is not additive in ") + c;
        }
        if (f.partial("x").partial("z") != f.partial("z").partial("x")) return "partials do not commute";
        ScalarExpr rebuilt;
        auto terms = f.terms();
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            rebuilt += ScalarExpr::term(s, it->coeff, it->monomial, it->exponent);
        if (rebuilt != f) return "rebuilding in reverse order changes the expression";
        if (parse_scalar(f.to_string(), s) != f) return "print/parse round trip fails for " + f.to_string();
        return {};
    });
}

inline PropertyResult jacobi_identity(int cases = property_cases) {
    Symbols s = make_symbols({"x", "y", "z"});
    return run_property("Jacobi identity of the Lie bracket", property_seed + 1, cases, [&](Gen& g) -> std::string {
        VectorField X = g.field(s), Y = g.field(s), Z = g.field(s);
        VectorField j1 = bracket(X, bracket(Y, Z)), j2 = bracket(Y, bracket(Z, X)), j3 = bracket(Z, bracket(X, Y));
        for (std::size_t i = 0; i < 3; ++i)
            if (!(j1.components[i] + j2.components[i] + j3.components[i]).is_zero()) return "Jacobi sum nonzero";
        VectorField xy = bracket(X, Y), yx = bracket(Y, X);
        for (std::size_t i = 0; i < 3; ++i)
            if (!(xy.components[i] + yx.components[i]).is_zero()) return "bracket not antisymmetric";
        return {};
    });
}

inline std::size_t random_dimension(Gen& g) { return g.integer(0, 4) == 0 ? 5 : 3; }

inline PropertyResult connection_laws(int cases = property_cases) {
    return run_property("torsion-free and metric-compatible connections", property_seed + 2, cases,
                        [&](Gen& g) -> std::string {
                            Frame f = g.frame(random_dimension(g));
                            FrameConnection conn = koszul_connection(f);
                            if (!torsion_residual(f, conn).is_zero()) return "torsion";
                            if (!metric_residual(f, conn).is_zero()) return "metric";
                            return {};
                        });
}

inline PropertyResult ricci_symmetry(int cases = property_cases) {
    return run_property("Ricci symmetry and first Bianchi identity", property_seed + 3, cases,
                        [&](Gen& g) -> std::string {
                            Frame f = g.frame(random_dimension(g));
                            RiemannTensor R = riemann_unchecked(f, koszul_connection(f));
                            if (!bianchi_residual(R).is_zero()) return "Bianchi";
                            if (!antisymmetry_residual(R).is_zero()) return "antisymmetry";
                            if (!pair_symmetry_residual(f, R).is_zero()) return "pair symmetry";
                            RicciTensor S = ricci(f, R);
                            for (std::size_t a = 0; a < f.dimension(); ++a)
                                for (std::size_t b = a + 1; b < f.dimension(); ++b)
                                    if (S.at({a, b}) != S.at({b, a})) return "S not symmetric";
                            return {};
                        });
}

inline std::vector<PropertyResult> all_properties() {
    return {ring_laws(), jacobi_identity(), connection_laws(), ricci_symmetry()};
}

}  // namespace pk::test
