#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pk/scalar.hpp"

namespace pk {

using Vec = std::vector<ScalarExpr>;
using Matrix = std::vector<std::vector<ScalarExpr>>;

Vec zero_vec(std::size_t dim);
Vec basis_vec(std::size_t dim, std::size_t i);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const ScalarExpr& s, const Vec& v);
bool is_zero(const Vec& v);
std::string to_string(const Vec& v, const std::vector<std::string>& basis_names);

ScalarExpr determinant(const Matrix& m);
// Inverse via adjugate; the determinant must be invertible in the ring.
Matrix inverse(const Matrix& m);
// Rank of a matrix with constant entries; throws if an entry is not constant.
std::size_t rational_rank(const Matrix& m);

// Coordinate chart of an odd-dimensional manifold. Formal parameters may be
// adjoined; they behave as constants under differentiation.
class Chart {
public:
    explicit Chart(std::vector<std::string> coords, std::vector<std::string> params = {});

    std::size_t dimension() const { return symbols_->num_coords(); }
    int n() const { return static_cast<int>(dimension() - 1) / 2; }
    const Symbols& symbols() const { return symbols_; }
    const std::string& coord(std::size_t i) const { return symbols_->name(static_cast<int>(i)); }
    ScalarExpr var(const std::string& name) const { return ScalarExpr::variable(symbols_, name); }

private:
    Symbols symbols_;
};

// X = sum_i a^i d/dx^i in coordinate components.
struct VectorField {
    Vec components;

    bool operator==(const VectorField& o) const;
};

ScalarExpr apply(const VectorField& X, const ScalarExpr& f);
VectorField bracket(const VectorField& X, const VectorField& Y);

// Frame fields E_1..E_d over a chart together with the Gram matrix
// g(E_a, E_b). The component matrix must have an invertible determinant.
class Frame {
public:
    Frame(Chart chart, std::vector<VectorField> members, Matrix gram);

    const Chart& chart() const { return chart_; }
    std::size_t dimension() const { return members_.size(); }
    const VectorField& member(std::size_t a) const { return members_[a]; }
    const std::vector<VectorField>& members() const { return members_; }
    const Matrix& gram() const { return gram_; }
    const ScalarExpr& gram(std::size_t a, std::size_t b) const { return gram_[a][b]; }

    bool diagonal_gram() const;
    // Constant diagonal with entries +-1.
    bool pseudo_orthonormal() const;
    // Inverse of a diagonal Gram matrix with invertible entries.
    ScalarExpr inverse_gram(std::size_t a) const;

    Vec to_frame(const VectorField& X) const;
    VectorField from_frame(const Vec& x) const;

    // E_a(f) and X(f) for X given in frame components.
    ScalarExpr derivative(std::size_t a, const ScalarExpr& f) const;
    ScalarExpr derivative(const Vec& X, const ScalarExpr& f) const;

    // Structure functions: [E_a, E_b] = sum_k C^k_ab E_k.
    const Vec& structure(std::size_t a, std::size_t b) const { return structure_[a * dimension() + b]; }
    Vec bracket(const Vec& X, const Vec& Y) const;
    ScalarExpr metric(const Vec& X, const Vec& Y) const;
    Vec lower(const Vec& X) const;  // g(X, E_a)

private:
    Chart chart_;
    std::vector<VectorField> members_;
    Matrix gram_;
    Matrix inverse_components_;  // coordinate -> frame
    std::vector<Vec> structure_;
};

// Tensor of valence (up, down), up in {0, 1}, with frame components. Index
// order is (contravariant, covariant...), row-major.
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t dim, int up, int down);

    static Tensor from_matrix(const Matrix& m, bool require_symmetric = false);

    std::size_t dimension() const { return dim_; }
    int up() const { return up_; }
    int down() const { return down_; }
    std::size_t size() const { return data_.size(); }

    ScalarExpr& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    const ScalarExpr& at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
    ScalarExpr& flat(std::size_t i) { return data_[i]; }
    const ScalarExpr& flat(std::size_t i) const { return data_[i]; }
    std::vector<std::size_t> unflatten(std::size_t i) const;
    std::size_t flatten(std::span<const std::size_t> idx) const;

    // Multilinear evaluation on frame-component arguments; for up == 1 the
    // result is the vector's frame components, otherwise a length-1 Vec.
    Vec eval(std::span<const Vec> args) const;
    ScalarExpr scalar(std::span<const Vec> args) const;
    ScalarExpr scalar(std::initializer_list<Vec> args) const;
    Vec vector(std::initializer_list<Vec> args) const;

    bool is_zero() const;
    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor scaled(const ScalarExpr& s) const;
    bool operator==(const Tensor& o) const;

private:
    std::size_t offset(std::initializer_list<std::size_t> idx) const;
    void eval_rec(std::span<const Vec> args, std::size_t slot, std::size_t base,
                  const ScalarExpr& weight, Vec& out) const;

    std::size_t dim_ = 0;
    int up_ = 0;
    int down_ = 0;
    std::vector<ScalarExpr> data_;
};

// First nonzero component of a residual, for diagnostics.
struct Witness {
    std::vector<std::size_t> index;  // contravariant index first when up == 1
    ScalarExpr value;
    int up = 0;

    std::string describe(const std::vector<std::string>& frame_names) const;
};

std::optional<Witness> first_nonzero(const Tensor& t);

Tensor metric_tensor(const Frame& frame);
ScalarExpr metric_eval(const Frame& frame, const Tensor& g, const VectorField& X, const VectorField& Y);
// S(X,Y) or R(X,Y)Z style evaluation of a stored tensor on vector fields.
std::variant<ScalarExpr, VectorField> tensor_apply(const Frame& frame, const Tensor& t,
                                                   const std::vector<VectorField>& args);
Tensor covector(const Vec& a);  // (0,1) tensor from components
Tensor outer(const Vec& a, const Vec& b);  // (0,2) tensor a (x) b of covector components
// (d omega)(E_a, E_b) = E_a(omega_b) - E_b(omega_a) - omega([E_a, E_b]).
Tensor exterior_derivative_1form(const Frame& frame, const Vec& omega);

std::vector<std::string> default_frame_names(std::size_t dim);

}  // namespace pk
