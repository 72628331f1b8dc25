#include "pk/curvature.hpp"

namespace pk {

Tensor antisymmetry_residual(const RiemannTensor& R) {
    const std::size_t d = R.dimension();
    Tensor t(d, 1, 3);
    for (std::size_t f = 0; f < R.size(); ++f) {
        auto idx = R.unflatten(f);
        t.flat(f) = R.flat(f) + R.at({idx[0], idx[2], idx[1], idx[3]});
    }
    return t;
}

Tensor bianchi_residual(const RiemannTensor& R) {
    const std::size_t d = R.dimension();
    Tensor t(d, 1, 3);
    for (std::size_t f = 0; f < R.size(); ++f) {
        auto i = R.unflatten(f);
        t.flat(f) = R.flat(f) + R.at({i[0], i[2], i[3], i[1]}) + R.at({i[0], i[3], i[1], i[2]});
    }
    return t;
}

Tensor pair_symmetry_residual(const Frame& frame, const RiemannTensor& R) {
    Tensor low = lower_first(frame, R);  // (w; x, y, z) = g(R(x,y)z, w)
    Tensor t(R.dimension(), 0, 4);
    for (std::size_t f = 0; f < t.size(); ++f) {
        auto i = t.unflatten(f);  // (x, y, z, w)
        t.flat(f) = low.at({i[3], i[0], i[1], i[2]}) - low.at({i[1], i[2], i[3], i[0]});
    }
    return t;
}

RiemannTensor riemann_unchecked(const Frame& frame, const FrameConnection& conn) {
    const std::size_t d = frame.dimension();
    RiemannTensor R(d, 1, 3);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const Vec& cab = frame.structure(a, b);
            for (std::size_t c = 0; c < d; ++c) {
                const Vec& gbc = conn.gamma(b, c);
                const Vec& gac = conn.gamma(a, c);
                for (std::size_t e = 0; e < d; ++e) {
                    ScalarExpr v = frame.derivative(a, gbc[e]) - frame.derivative(b, gac[e]);
                    for (std::size_t m = 0; m < d; ++m) {
                        if (!gbc[m].is_zero() && !conn.gamma(a, m)[e].is_zero())
                            v += gbc[m] * conn.gamma(a, m)[e];
                        if (!gac[m].is_zero() && !conn.gamma(b, m)[e].is_zero())
                            v -= gac[m] * conn.gamma(b, m)[e];
                        if (!cab[m].is_zero() && !conn.gamma(m, c)[e].is_zero())
                            v -= cab[m] * conn.gamma(m, c)[e];
                    }
                    R.at({e, a, b, c}) = v;
                }
            }
        }
    }
    return R;
}

RiemannTensor riemann(const Frame& frame, const FrameConnection& conn) {
    RiemannTensor R = riemann_unchecked(frame, conn);
    auto names = default_frame_names(frame.dimension());
    if (auto w = first_nonzero(antisymmetry_residual(R)))
        throw Error("curvature is not antisymmetric at " + w->describe(names));
    if (auto w = first_nonzero(bianchi_residual(R)))
        throw Error("first Bianchi identity fails at " + w->describe(names));
    if (auto w = first_nonzero(pair_symmetry_residual(frame, R)))
        throw Error("curvature pair symmetry fails at " + w->describe(names));
    return R;
}

namespace {

void require_constant_diagonal(const Frame& frame) {
    if (!frame.diagonal_gram()) throw Error("gram matrix must be diagonal");
    for (std::size_t a = 0; a < frame.dimension(); ++a)
        if (!frame.gram(a, a).is_constant() || frame.gram(a, a).is_zero())
            throw Error("gram matrix must be constant and nondegenerate");
}

}  // namespace

RicciTensor ricci(const Frame& frame, const RiemannTensor& R) {
    require_constant_diagonal(frame);
    const std::size_t d = frame.dimension();
    RicciTensor S(d, 0, 2);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            ScalarExpr v;
            for (std::size_t i = 0; i < d; ++i) {
                // eps_i g(R(E_i,X)Y, E_i) = R^i_{i x y} for diagonal gram
                ScalarExpr eps = frame.inverse_gram(i);
                v += eps * frame.gram(i, i) * R.at({i, i, x, y});
            }
            S.at({x, y}) = v;
        }
    }
    return S;
}

RicciOperator ricci_operator(const Frame& frame, const RicciTensor& S) {
    require_constant_diagonal(frame);
    const std::size_t d = frame.dimension();
    RicciOperator Q(d, 1, 1);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) Q.at({b, a}) = S.at({a, b}) * frame.inverse_gram(b);
    return Q;
}

ScalarExpr scalar_curvature(const RicciOperator& Q) {
    ScalarExpr s;
    for (std::size_t a = 0; a < Q.dimension(); ++a) s += Q.at({a, a});
    return s;
}

W2Tensor w2(const Frame& frame, const RiemannTensor& R, const RicciOperator& Q, int n) {
    if (n < 1) throw Error("W2 needs n >= 1");
    const std::size_t d = frame.dimension();
    const Rational k(1, 2 * n);
    W2Tensor W = R;
    for (std::size_t e = 0; e < d; ++e)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                for (std::size_t c = 0; c < d; ++c) {
                    ScalarExpr corr = frame.gram(a, c) * Q.at({e, b}) - frame.gram(b, c) * Q.at({e, a});
                    if (!corr.is_zero()) W.at({e, a, b, c}) += corr.scaled(k);
                }
    return W;
}

Tensor lie_derivative(const Frame& frame, const Vec& X, const Tensor& t) {
    const std::size_t d = frame.dimension();
    const auto s = static_cast<std::size_t>(t.down());
    std::vector<Vec> xe(d);  // [X, E_a]
    for (std::size_t a = 0; a < d; ++a) xe[a] = frame.bracket(X, basis_vec(d, a));

    Tensor r(d, t.up(), t.down());
    // Iterate over covariant index tuples.
    std::size_t tuples = 1;
    for (std::size_t k = 0; k < s; ++k) tuples *= d;
    std::vector<std::size_t> idx(s);
    for (std::size_t f = 0; f < tuples; ++f) {
        std::size_t rem = f;
        for (std::size_t k = s; k-- > 0;) {
            idx[k] = rem % d;
            rem /= d;
        }
        std::vector<Vec> args;
        for (std::size_t k = 0; k < s; ++k) args.push_back(basis_vec(d, idx[k]));
        Vec value = t.eval(args);
        Vec out;
        if (t.up() == 1) out = frame.bracket(X, value);
        else out = Vec{frame.derivative(X, value[0])};
        for (std::size_t k = 0; k < s; ++k) {
            auto moved = args;
            moved[k] = xe[idx[k]];
            out = out - t.eval(moved);
        }
        for (std::size_t u = 0; u < out.size(); ++u) {
            std::vector<std::size_t> full;
            if (t.up() == 1) full.push_back(u);
            full.insert(full.end(), idx.begin(), idx.end());
            r.flat(r.flatten(full)) = out[u];
        }
    }
    return r;
}

Tensor lie_derivative(const Frame& frame, const VectorField& X, const Tensor& t) {
    return lie_derivative(frame, frame.to_frame(X), t);
}

Tensor compose(const Tensor& a, const Tensor& b) {
    if (a.up() != 1 || a.down() != 1 || b.up() != 1 || b.down() != 1)
        throw Error("composition needs (1,1) tensors");
    const std::size_t d = a.dimension();
    Tensor r(d, 1, 1);
    for (std::size_t x = 0; x < d; ++x) {
        Vec v = a.vector({b.vector({basis_vec(d, x)})});
        for (std::size_t u = 0; u < d; ++u) r.at({u, x}) = v[u];
    }
    return r;
}

Tensor identity_tensor(std::size_t dim) {
    Tensor t(dim, 1, 1);
    for (std::size_t a = 0; a < dim; ++a) t.at({a, a}) = ScalarExpr(1);
    return t;
}

Tensor nijenhuis(const Frame& frame, const Tensor& phi) {
    if (phi.up() != 1 || phi.down() != 1) throw Error("Nijenhuis tensor needs a (1,1) tensor");
    const std::size_t d = frame.dimension();
    auto P = [&](const Vec& v) { return phi.vector({v}); };
    Tensor N(d, 1, 2);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            Vec ea = basis_vec(d, a);
            Vec eb = basis_vec(d, b);
            Vec pa = P(ea);
            Vec pb = P(eb);
            Vec v = P(P(frame.bracket(ea, eb))) + frame.bracket(pa, pb) - P(frame.bracket(pa, eb)) -
                    P(frame.bracket(ea, pb));
            for (std::size_t u = 0; u < d; ++u) N.at({u, a, b}) = v[u];
        }
    }
    return N;
}

}  // namespace pk
