#pragma once

#include <optional>

#include "pk/frame.hpp"

namespace pk {

// Connection coefficients in a frame: nabla_{E_i} E_j = sum_k gamma(i,j)[k] E_k.
class FrameConnection {
public:
    explicit FrameConnection(std::size_t dim);

    std::size_t dimension() const { return dim_; }
    const Vec& gamma(std::size_t i, std::size_t j) const { return gamma_[i * dim_ + j]; }
    Vec& gamma(std::size_t i, std::size_t j) { return gamma_[i * dim_ + j]; }

    bool operator==(const FrameConnection& o) const { return gamma_ == o.gamma_; }

private:
    std::size_t dim_;
    std::vector<Vec> gamma_;
};

// Torsion T^k_ij = gamma^k_ij - gamma^k_ji - C^k_ij, stored as a (1,2) tensor.
Tensor torsion_residual(const Frame& frame, const FrameConnection& conn);
// E_i g_jk - g(nabla_i E_j, E_k) - g(E_j, nabla_i E_k), a (0,3) tensor.
Tensor metric_residual(const Frame& frame, const FrameConnection& conn);

// Levi-Civita connection from the six-term Koszul formula. Needs a diagonal
// gram with invertible entries; both defining properties are re-verified
// and a violation throws.
FrameConnection koszul_connection(const Frame& frame);

Vec covariant_derivative_vector(const Frame& frame, const FrameConnection& conn, const Vec& X,
                                const Vec& Y);

// Full covariant differential: a (r, s) tensor T becomes the (r, s+1) tensor
// (nabla T)(E_i; E_a, ...) = (nabla_{E_i} T)(E_a, ...). (1,s) tensors go
// through their metric-lowered form.
Tensor nabla(const Frame& frame, const FrameConnection& conn, const Tensor& t);
Tensor covariant_derivative_tensor(const Frame& frame, const FrameConnection& conn, const Tensor& t,
                                   const Vec& X);

// Index lowering/raising of the contravariant slot of a (1,s) tensor; the
// lowered index becomes the first covariant slot.
Tensor lower_first(const Frame& frame, const Tensor& t);
Tensor raise_first(const Frame& frame, const Tensor& t);

}  // namespace pk
