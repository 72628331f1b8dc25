#include "pk/paracontact.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pk {

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::skipped: return "SKIPPED";
    }
    return "?";
}

ScalarExpr ParacontactStructure::eta_of(const Vec& v) const {
    ScalarExpr r;
    for (std::size_t a = 0; a < v.size(); ++a)
        if (!eta[a].is_zero() && !v[a].is_zero()) r += eta[a] * v[a];
    return r;
}

Tensor ParacontactStructure::eta_xi() const {
    const std::size_t d = dimension();
    Tensor t(d, 1, 1);
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t x = 0; x < d; ++x)
            if (!xi[u].is_zero() && !eta[x].is_zero()) t.at({u, x}) = xi[u] * eta[x];
    return t;
}

ParacontactStructure make_structure(std::string name, Frame frame, Tensor phi, Vec xi,
                                    std::optional<Vec> eta, int n,
                                    std::vector<std::string> frame_names) {
    const std::size_t d = frame.dimension();
    if (phi.dimension() != d || phi.up() != 1 || phi.down() != 1)
        throw Error("phi must be a (1,1) tensor of dimension " + std::to_string(d));
    if (xi.size() != d) throw Error("xi has the wrong number of components");
    if (eta && eta->size() != d) throw Error("eta has the wrong number of components");
    if (2 * n + 1 != static_cast<int>(d))
        throw Error("n = " + std::to_string(n) + " does not match dimension " + std::to_string(d));
    if (frame_names.empty()) frame_names = default_frame_names(d);
    Vec eta_v = eta ? *eta : frame.lower(xi);
    Tensor g = metric_tensor(frame);
    return ParacontactStructure{std::move(name), std::move(frame), std::move(phi), std::move(xi),
                                std::move(eta_v), std::move(g), n, std::move(frame_names)};
}

Tensor phi_squared_residual(const ParacontactStructure& s) {
    const std::size_t d = s.dimension();
    return compose(s.phi, s.phi) - (identity_tensor(d) - s.eta_xi());
}

Tensor para_kenmotsu_residual(const ParacontactStructure& s, const FrameConnection& conn) {
    const std::size_t d = s.dimension();
    Tensor dphi = nabla(s.frame, conn, s.phi);  // (u; i, j) = ((nabla_i phi) E_j)^u
    Tensor r(d, 1, 2);
    for (std::size_t i = 0; i < d; ++i) {
        Vec pi = s.apply_phi(s.e(i));
        for (std::size_t j = 0; j < d; ++j) {
            ScalarExpr gpij = s.frame.metric(pi, s.e(j));
            for (std::size_t u = 0; u < d; ++u) {
                ScalarExpr v = dphi.at({u, i, j});
                if (!gpij.is_zero() && !s.xi[u].is_zero()) v -= gpij * s.xi[u];
                if (!s.eta[j].is_zero() && !pi[u].is_zero()) v += s.eta[j] * pi[u];
                r.at({u, i, j}) = v;
            }
        }
    }
    return r;
}

CheckReport tensor_check(std::string name, std::string reference, const Tensor& residual,
                         const std::vector<std::string>& frame_names) {
    CheckReport r;
    r.name = std::move(name);
    r.reference = std::move(reference);
    if (auto w = first_nonzero(residual)) {
        r.status = Status::fail;
        r.witness = w->describe(frame_names);
    }
    return r;
}

namespace {

CheckReport scalar_check(std::string name, std::string reference, const ScalarExpr& residual,
                         const std::string& where) {
    CheckReport r;
    r.name = std::move(name);
    r.reference = std::move(reference);
    if (!residual.is_zero()) {
        r.status = Status::fail;
        r.witness = where + ": " + residual.to_string();
    }
    return r;
}

CheckReport vector_check(std::string name, std::string reference, const Vec& residual,
                         const std::vector<std::string>& names) {
    CheckReport r;
    r.name = std::move(name);
    r.reference = std::move(reference);
    if (!is_zero(residual)) {
        r.status = Status::fail;
        r.witness = to_string(residual, names);
    }
    return r;
}

// Basis of ker eta: E_a - eta_a xi for a != k, where xi_k != 0.
std::optional<std::vector<Vec>> ker_eta_basis(const ParacontactStructure& s) {
    if (s.eta_of(s.xi) != ScalarExpr(1)) return std::nullopt;
    const std::size_t d = s.dimension();
    std::size_t k = d;
    for (std::size_t a = 0; a < d; ++a)
        if (!s.xi[a].is_zero()) {
            k = a;
            break;
        }
    if (k == d) return std::nullopt;
    std::vector<Vec> basis;
    for (std::size_t a = 0; a < d; ++a)
        if (a != k) basis.push_back(s.e(a) - s.eta[a] * s.xi);
    return basis;
}

bool constant_tensor(const Tensor& t) {
    for (std::size_t f = 0; f < t.size(); ++f)
        if (!t.flat(f).is_constant()) return false;
    return true;
}

bool constant_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const ScalarExpr& e) { return e.is_constant(); });
}

}  // namespace

std::optional<ParacomplexRanks> paracomplex_ranks(const ParacontactStructure& s) {
    if (!constant_tensor(s.phi) || !constant_vec(s.eta) || !constant_vec(s.xi)) return std::nullopt;
    auto basis = ker_eta_basis(s);
    if (!basis) return std::nullopt;
    const std::size_t d = s.dimension();
    auto rank_of = [&](int sign) {
        Matrix m(d, Vec(basis->size()));
        for (std::size_t c = 0; c < basis->size(); ++c) {
            Vec v = s.apply_phi((*basis)[c]) - ScalarExpr(sign) * (*basis)[c];
            for (std::size_t u = 0; u < d; ++u) m[u][c] = v[u];
        }
        return rational_rank(m);
    };
    return ParacomplexRanks{rank_of(1), rank_of(-1)};
}

std::vector<CheckReport> check_axioms(const ParacontactStructure& s) {
    const std::size_t d = s.dimension();
    const auto& names = s.frame_names;
    std::vector<CheckReport> out;

    out.push_back(timed([&] {
        return scalar_check("axiom.eta_xi", "eta(xi) = 1", s.eta_of(s.xi) - ScalarExpr(1), "eta(xi) - 1");
    }));
    out.push_back(timed([&] { return vector_check("axiom.phi_xi", "phi xi = 0", s.apply_phi(s.xi), names); }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 1);
        for (std::size_t a = 0; a < d; ++a) t.at({a}) = s.eta_of(s.apply_phi(s.e(a)));
        return tensor_check("axiom.eta_phi", "eta(phi X) = 0", t, names);
    }));
    out.push_back(timed([&] {
        return tensor_check("axiom.phi_squared", "phi^2 = Id - eta (x) xi", phi_squared_residual(s), names);
    }));
    out.push_back(timed([&] {
        CheckReport r;
        r.name = "axiom.paracomplex";
        r.reference = "phi on ker eta has +1 and -1 eigendistributions of rank n";
        const auto n = static_cast<std::size_t>(s.n);
        if (auto ranks = paracomplex_ranks(s)) {
            if (ranks->plus != n || ranks->minus != n) {
                r.status = Status::fail;
                r.witness = "rank(phi - Id) = " + std::to_string(ranks->plus) +
                            ", rank(phi + Id) = " + std::to_string(ranks->minus) + " on ker eta";
            }
            r.detail = "exact rank computation";
        } else {
            // phi^2 = Id on ker eta and tr phi = 0 force equal eigenvalue multiplicities.
            ScalarExpr tr;
            for (std::size_t a = 0; a < d; ++a) tr += s.phi.at({a, a});
            bool sq = !first_nonzero(phi_squared_residual(s));
            if (!sq || !tr.is_zero()) {
                r.status = Status::fail;
                r.witness = sq ? "trace of phi: " + tr.to_string() : "phi^2 differs from Id on ker eta";
            }
            r.detail = "trace criterion";
        }
        return r;
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 2);
        for (std::size_t a = 0; a < d; ++a) {
            Vec pa = s.apply_phi(s.e(a));
            for (std::size_t b = 0; b < d; ++b)
                t.at({a, b}) = s.frame.metric(pa, s.apply_phi(s.e(b))) + s.g.at({a, b}) - s.eta[a] * s.eta[b];
        }
        return tensor_check("axiom.compatible_metric", "g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y)", t, names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 1);
        for (std::size_t a = 0; a < d; ++a) t.at({a}) = s.eta[a] - s.frame.metric(s.e(a), s.xi);
        return tensor_check("axiom.eta_dual", "eta(X) = g(X, xi)", t, names);
    }));
    out.push_back(timed([&] {
        return scalar_check("axiom.xi_unit", "g(xi, xi) = 1", s.frame.metric(s.xi, s.xi) - ScalarExpr(1),
                            "g(xi,xi) - 1");
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 2);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                t.at({a, b}) = s.frame.metric(s.apply_phi(s.e(a)), s.e(b)) +
                               s.frame.metric(s.e(a), s.apply_phi(s.e(b)));
        return tensor_check("axiom.phi_skew", "g(phi X, Y) = -g(X, phi Y)", t, names);
    }));
    out.push_back(timed([&] {
        CheckReport r;
        r.name = "axiom.signature";
        r.reference = "g has signature (n+1, n)";
        if (!s.frame.diagonal_gram()) {
            r.status = Status::fail;
            r.witness = "gram matrix is not diagonal";
            return r;
        }
        int pos = 0;
        int neg = 0;
        for (std::size_t a = 0; a < d; ++a) {
            auto q = s.frame.gram(a, a).constant_value();
            if (!q || sgn(*q) == 0) {
                r.status = Status::fail;
                r.witness = "gram entry " + names[a] + " is not a nonzero constant";
                return r;
            }
            (sgn(*q) > 0 ? pos : neg)++;
        }
        if (pos != s.n + 1 || neg != s.n) {
            r.status = Status::fail;
            r.witness = "signature (" + std::to_string(pos) + ", " + std::to_string(neg) + ")";
        }
        return r;
    }));
    out.push_back(timed([&] {
        CheckReport r;
        r.name = "axiom.distribution";
        r.reference = "ker eta is phi-invariant and involutive";
        auto basis = ker_eta_basis(s);
        if (!basis) {
            r.status = Status::fail;
            r.witness = "eta(xi) != 1, ker eta basis unavailable";
            return r;
        }
        for (std::size_t a = 0; a < basis->size(); ++a) {
            ScalarExpr inv = s.eta_of(s.apply_phi((*basis)[a]));
            if (!inv.is_zero()) {
                r.status = Status::fail;
                r.witness = "eta(phi V" + std::to_string(a + 1) + "): " + inv.to_string();
                return r;
            }
        }
        for (std::size_t a = 0; a < basis->size(); ++a)
            for (std::size_t b = a + 1; b < basis->size(); ++b) {
                ScalarExpr br = s.eta_of(s.frame.bracket((*basis)[a], (*basis)[b]));
                if (!br.is_zero()) {
                    r.status = Status::fail;
                    r.witness = "eta([V" + std::to_string(a + 1) + ",V" + std::to_string(b + 1) +
                                "]): " + br.to_string();
                    return r;
                }
            }
        return r;
    }));
    return out;
}

CheckReport check_para_kenmotsu(const ParacontactStructure& s, const FrameConnection& conn) {
    return timed([&] {
        return tensor_check("para_kenmotsu", "(nabla_X phi)Y = g(phi X, Y) xi - eta(Y) phi X",
                            para_kenmotsu_residual(s, conn), s.frame_names);
    });
}

std::vector<CheckReport> identity_suite(const ParacontactStructure& s, const FrameConnection& conn,
                                        const RiemannTensor& R) {
    const std::size_t d = s.dimension();
    const auto& names = s.frame_names;
    const Tensor& g = s.g;
    Tensor ee = s.eta_eta();
    std::vector<CheckReport> out;

    std::vector<Vec> nabla_xi(d);
    for (std::size_t a = 0; a < d; ++a) nabla_xi[a] = covariant_derivative_vector(s.frame, conn, s.e(a), s.xi);
    Tensor nabla_eta = nabla(s.frame, conn, covector(s.eta));

    out.push_back(timed([&] {
        Tensor t(d, 1, 1);
        for (std::size_t a = 0; a < d; ++a) {
            Vec v = nabla_xi[a] - (s.e(a) - s.eta[a] * s.xi);
            for (std::size_t u = 0; u < d; ++u) t.at({u, a}) = v[u];
        }
        return tensor_check("identity.nabla_xi", "nabla_X xi = X - eta(X) xi", t, names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 1);
        for (std::size_t a = 0; a < d; ++a) t.at({a}) = s.eta_of(nabla_xi[a]);
        return tensor_check("identity.eta_nabla_xi", "eta(nabla_X xi) = 0", t, names);
    }));
    out.push_back(timed([&] {
        return vector_check("identity.nabla_xi_xi", "nabla_xi xi = 0",
                            covariant_derivative_vector(s.frame, conn, s.xi, s.xi), names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 1, 2);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) {
                Vec v = R.vector({s.e(x), s.e(y), s.xi}) - s.eta[x] * s.e(y) + s.eta[y] * s.e(x);
                for (std::size_t u = 0; u < d; ++u) t.at({u, x, y}) = v[u];
            }
        return tensor_check("identity.curvature_xi", "R(X,Y)xi = eta(X)Y - eta(Y)X", t, names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 3);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y)
                for (std::size_t z = 0; z < d; ++z)
                    t.at({x, y, z}) = s.eta_of(R.vector({s.e(x), s.e(y), s.e(z)})) + s.eta[x] * g.at({y, z}) -
                                      s.eta[y] * g.at({x, z});
        return tensor_check("identity.eta_curvature", "eta(R(X,Y)Z) = eta(Y) g(X,Z) - eta(X) g(Y,Z)", t,
                            names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 2);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) t.at({x, y}) = s.eta_of(R.vector({s.e(x), s.e(y), s.xi}));
        return tensor_check("identity.eta_curvature_xi", "eta(R(X,Y)xi) = 0", t, names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 2);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y)
                t.at({x, y}) = nabla_eta.at({x, y}) - g.at({x, y}) + ee.at({x, y});
        return tensor_check("identity.nabla_eta", "(nabla_X eta)Y = g(X,Y) - eta(X) eta(Y)", t, names);
    }));
    out.push_back(timed([&] {
        Tensor t(d, 0, 1);
        for (std::size_t y = 0; y < d; ++y) {
            ScalarExpr v;
            for (std::size_t i = 0; i < d; ++i)
                if (!s.xi[i].is_zero()) v += s.xi[i] * nabla_eta.at({i, y});
            t.at({y}) = v;
        }
        return tensor_check("identity.nabla_xi_eta", "nabla_xi eta = 0", t, names);
    }));
    out.push_back(timed([&] {
        return tensor_check("identity.lie_phi", "L_xi phi = 0", lie_derivative(s.frame, s.xi, s.phi), names);
    }));
    out.push_back(timed([&] {
        return tensor_check("identity.lie_eta", "L_xi eta = 0",
                            lie_derivative(s.frame, s.xi, covector(s.eta)), names);
    }));
    out.push_back(timed([&] {
        return tensor_check("identity.lie_eta_eta", "L_xi (eta (x) eta) = 0", lie_derivative(s.frame, s.xi, ee),
                            names);
    }));
    out.push_back(timed([&] {
        Tensor lg = lie_derivative(s.frame, s.xi, g);
        return tensor_check("identity.lie_g", "L_xi g = 2(g - eta (x) eta)",
                            lg - (g - ee).scaled(ScalarExpr(2)), names);
    }));
    out.push_back(timed([&] {
        return tensor_check("identity.d_eta", "d eta = 0", exterior_derivative_1form(s.frame, s.eta), names);
    }));
    out.push_back(timed([&] {
        return tensor_check("identity.nijenhuis", "N_phi = 0", nijenhuis(s.frame, s.phi), names);
    }));
    return out;
}

namespace {

std::vector<std::string> warped_coords(int n) {
    if (n == 1) return {"x", "y", "z"};
    std::vector<std::string> c;
    for (int i = 1; i <= n; ++i) c.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) c.push_back("y" + std::to_string(i));
    c.push_back("z");
    return c;
}

}  // namespace

ParacontactStructure make_warped_fixture(int n, std::vector<std::string> params,
                                         std::optional<std::uint32_t> seed) {
    if (n < 1) throw Error("n must be at least 1");
    const auto h = static_cast<std::size_t>(2 * n);
    const std::size_t d = h + 1;
    Chart chart(warped_coords(n), std::move(params));
    const Symbols& sym = chart.symbols();
    const int zi = static_cast<int>(h);

    Rational c = 1;
    Matrix B(h, Vec(h));
    for (std::size_t a = 0; a < h; ++a) B[a][a] = ScalarExpr(1);
    std::vector<std::size_t> slots(h);
    std::iota(slots.begin(), slots.end(), 0);

    if (seed) {
        std::mt19937 rng(*seed);
        static const Rational scales[] = {Rational(1), Rational(2), Rational(-1), Rational(1, 2),
                                          Rational(-3, 2), Rational(3)};
        c = scales[std::uniform_int_distribution<int>(0, 5)(rng)];
        std::uniform_int_distribution<int> entry(-2, 2);
        do {
            for (auto& row : B)
                for (auto& e : row) e = ScalarExpr(entry(rng));
        } while (determinant(B).is_zero());
        std::shuffle(slots.begin(), slots.end(), rng);
    }

    ScalarExpr w = ScalarExpr::exp(sym, LinearForm::variable(zi, c));
    std::vector<VectorField> members(d);
    for (std::size_t a = 0; a < h; ++a) {
        Vec comp = zero_vec(d);
        for (std::size_t j = 0; j < h; ++j) comp[j] = w * B[a][j];
        members[a].components = comp;
    }
    Vec zc = zero_vec(d);
    zc[h] = ScalarExpr(Rational(-1) / c);
    members[h].components = zc;

    Matrix gram(d, Vec(d));
    Tensor phi(d, 1, 1);
    const auto nn = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < nn; ++i) {
        std::size_t p = slots[i];
        std::size_t m = slots[nn + i];
        gram[p][p] = ScalarExpr(1);
        gram[m][m] = ScalarExpr(-1);
        phi.at({m, p}) = ScalarExpr(1);
        phi.at({p, m}) = ScalarExpr(1);
    }
    gram[h][h] = ScalarExpr(1);

    Frame frame(std::move(chart), std::move(members), std::move(gram));
    std::string name = "warped_r" + std::to_string(d);
    return make_structure(std::move(name), std::move(frame), std::move(phi), basis_vec(d, h), std::nullopt, n);
}

}  // namespace pk
