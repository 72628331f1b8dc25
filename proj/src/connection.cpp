#include "pk/connection.hpp"

namespace pk {

FrameConnection::FrameConnection(std::size_t dim) : dim_(dim), gamma_(dim * dim, Vec(dim)) {}

Tensor torsion_residual(const Frame& frame, const FrameConnection& conn) {
    const std::size_t d = frame.dimension();
    Tensor t(d, 1, 2);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                t.at({k, i, j}) = conn.gamma(i, j)[k] - conn.gamma(j, i)[k] - frame.structure(i, j)[k];
    return t;
}

Tensor metric_residual(const Frame& frame, const FrameConnection& conn) {
    const std::size_t d = frame.dimension();
    Tensor t(d, 0, 3);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                t.at({i, j, k}) = frame.derivative(i, frame.gram(j, k)) -
                                  frame.metric(conn.gamma(i, j), basis_vec(d, k)) -
                                  frame.metric(basis_vec(d, j), conn.gamma(i, k));
    return t;
}

FrameConnection koszul_connection(const Frame& frame) {
    const std::size_t d = frame.dimension();
    std::vector<ScalarExpr> inv(d);
    for (std::size_t k = 0; k < d; ++k) inv[k] = frame.inverse_gram(k);

    auto e = [d](std::size_t i) { return basis_vec(d, i); };
    auto g = [&](const Vec& a, const Vec& b) { return frame.metric(a, b); };
    const Rational half(1, 2);

    FrameConnection conn(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                // 2 g(nabla_i E_j, E_k)
                ScalarExpr twice = frame.derivative(i, frame.gram(j, k)) +
                                   frame.derivative(j, frame.gram(k, i)) -
                                   frame.derivative(k, frame.gram(i, j)) -
                                   g(e(i), frame.structure(j, k)) + g(e(j), frame.structure(k, i)) +
                                   g(e(k), frame.structure(i, j));
                if (!twice.is_zero()) conn.gamma(i, j)[k] = twice.scaled(half) * inv[k];
            }
        }
    }
    if (auto w = first_nonzero(torsion_residual(frame, conn)))
        throw Error("constructed connection has torsion at " + w->describe(default_frame_names(d)));
    if (auto w = first_nonzero(metric_residual(frame, conn)))
        throw Error("constructed connection is not metric at " + w->describe(default_frame_names(d)));
    return conn;
}

Vec covariant_derivative_vector(const Frame& frame, const FrameConnection& conn, const Vec& X,
                                const Vec& Y) {
    const std::size_t d = frame.dimension();
    Vec r(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (X[i].is_zero()) continue;
        Vec inner(d);
        for (std::size_t j = 0; j < d; ++j) {
            inner[j] += frame.derivative(i, Y[j]);
            if (Y[j].is_zero()) continue;
            const Vec& gam = conn.gamma(i, j);
            for (std::size_t k = 0; k < d; ++k)
                if (!gam[k].is_zero()) inner[k] += Y[j] * gam[k];
        }
        r = r + X[i] * inner;
    }
    return r;
}

Tensor lower_first(const Frame& frame, const Tensor& t) {
    if (t.up() != 1) throw Error("lowering needs a contravariant slot");
    const std::size_t d = t.dimension();
    Tensor r(d, 0, t.down() + 1);
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t.flat(f).is_zero()) continue;
        auto idx = t.unflatten(f);  // (u, a...)
        for (std::size_t b = 0; b < d; ++b) {
            const ScalarExpr& gub = frame.gram(idx[0], b);
            if (gub.is_zero()) continue;
            auto low = idx;
            low[0] = b;
            r.flat(r.flatten(low)) += gub * t.flat(f);
        }
    }
    return r;
}

Tensor raise_first(const Frame& frame, const Tensor& t) {
    if (t.up() != 0 || t.down() < 1) throw Error("raising needs a covariant slot");
    const std::size_t d = t.dimension();
    Tensor r(d, 1, t.down() - 1);
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t.flat(f).is_zero()) continue;
        auto idx = t.unflatten(f);
        r.flat(r.flatten(idx)) += t.flat(f) * frame.inverse_gram(idx[0]);
    }
    return r;
}

namespace {

Tensor nabla_covariant(const Frame& frame, const FrameConnection& conn, const Tensor& t) {
    const std::size_t d = t.dimension();
    const auto s = static_cast<std::size_t>(t.down());
    Tensor r(d, 0, t.down() + 1);
    std::vector<std::size_t> full(s + 1);
    for (std::size_t f = 0; f < t.size(); ++f) {
        auto idx = t.unflatten(f);
        for (std::size_t i = 0; i < d; ++i) {
            ScalarExpr v = frame.derivative(i, t.flat(f));
            for (std::size_t slot = 0; slot < s; ++slot) {
                const Vec& gam = conn.gamma(i, idx[slot]);
                auto moved = idx;
                for (std::size_t k = 0; k < d; ++k) {
                    if (gam[k].is_zero()) continue;
                    moved[slot] = k;
                    const ScalarExpr& tk = t.flat(t.flatten(moved));
                    if (!tk.is_zero()) v -= gam[k] * tk;
                }
            }
            full[0] = i;
            std::copy(idx.begin(), idx.end(), full.begin() + 1);
            r.flat(r.flatten(full)) = v;
        }
    }
    return r;
}

// Exchanges the first two indices; used to put the lowered index ahead of
// the differentiation direction before raising it.
Tensor swap_first_two(const Tensor& t) {
    Tensor r(t.dimension(), t.up(), t.down());
    for (std::size_t f = 0; f < t.size(); ++f) {
        auto idx = t.unflatten(f);
        std::swap(idx[0], idx[1]);
        r.flat(r.flatten(idx)) = t.flat(f);
    }
    return r;
}

}  // namespace

Tensor nabla(const Frame& frame, const FrameConnection& conn, const Tensor& t) {
    if (t.down() > 3) throw Error("covariant derivative supports at most 3 covariant slots");
    if (t.up() == 0) return nabla_covariant(frame, conn, t);
    // (nabla T)^u_{i a...} = g^{ub} (nabla T_lowered)_{i b a...}
    Tensor d_low = nabla_covariant(frame, conn, lower_first(frame, t));
    return raise_first(frame, swap_first_two(d_low));
}

Tensor covariant_derivative_tensor(const Frame& frame, const FrameConnection& conn, const Tensor& t,
                                   const Vec& X) {
    Tensor full = nabla(frame, conn, t);
    const std::size_t d = t.dimension();
    Tensor r(d, t.up(), t.down());
    for (std::size_t f = 0; f < full.size(); ++f) {
        if (full.flat(f).is_zero()) continue;
        auto idx = full.unflatten(f);
        std::size_t dir_pos = static_cast<std::size_t>(t.up());
        std::size_t dir = idx[dir_pos];
        if (X[dir].is_zero()) continue;
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(dir_pos));
        r.flat(r.flatten(idx)) += X[dir] * full.flat(f);
    }
    return r;
}

}  // namespace pk
