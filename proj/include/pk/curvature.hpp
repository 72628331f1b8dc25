#pragma once

#include "pk/connection.hpp"

namespace pk {

// (1,3) tensor with R.at({d, a, b, c}) the E_d component of R(E_a,E_b)E_c,
// R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
using RiemannTensor = Tensor;
using RicciTensor = Tensor;    // symmetric (0,2)
using RicciOperator = Tensor;  // (1,1), Q.at({b, a}) = E_b component of Q E_a
using W2Tensor = Tensor;       // (1,3), same layout as RiemannTensor

// Residuals of the algebraic curvature identities; all vanish for a
// Levi-Civita connection.
Tensor antisymmetry_residual(const RiemannTensor& R);         // R(X,Y)Z + R(Y,X)Z
Tensor bianchi_residual(const RiemannTensor& R);              // R(X,Y)Z + R(Y,Z)X + R(Z,X)Y
Tensor pair_symmetry_residual(const Frame& frame, const RiemannTensor& R);  // g(R(X,Y)Z,W) - g(R(Z,W)X,Y)

// Verifies antisymmetry, first Bianchi and pair symmetry; throws on failure.
RiemannTensor riemann(const Frame& frame, const FrameConnection& conn);
RiemannTensor riemann_unchecked(const Frame& frame, const FrameConnection& conn);

// S(X,Y) = sum_i eps_i g(R(E_i,X)Y, E_i) with eps_i = 1/g(E_i,E_i); requires
// a constant diagonal gram.
RicciTensor ricci(const Frame& frame, const RiemannTensor& R);
RicciOperator ricci_operator(const Frame& frame, const RicciTensor& S);
ScalarExpr scalar_curvature(const RicciOperator& Q);

// W2(X,Y)Z = R(X,Y)Z + (1/2n)[g(X,Z) QY - g(Y,Z) QX].
W2Tensor w2(const Frame& frame, const RiemannTensor& R, const RicciOperator& Q, int n);

// Lie derivative along X (frame components) of a (0,s) or (1,s) tensor.
Tensor lie_derivative(const Frame& frame, const Vec& X, const Tensor& t);
Tensor lie_derivative(const Frame& frame, const VectorField& X, const Tensor& t);

// N(X,Y) = phi^2[X,Y] + [phiX,phiY] - phi[phiX,Y] - phi[X,phiY] as a (1,2) tensor.
Tensor nijenhuis(const Frame& frame, const Tensor& phi);

// Composition of (1,1) tensors: (A o B)(X) = A(B(X)).
Tensor compose(const Tensor& a, const Tensor& b);
Tensor identity_tensor(std::size_t dim);

}  // namespace pk
