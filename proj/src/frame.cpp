#include "pk/frame.hpp"

#include <algorithm>

namespace pk {

Vec zero_vec(std::size_t dim) { return Vec(dim); }

Vec basis_vec(std::size_t dim, std::size_t i) {
    Vec v(dim);
    v.at(i) = ScalarExpr(1);
    return v;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ChartMismatch();
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ChartMismatch();
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(const ScalarExpr& s, const Vec& v) {
    Vec r(v.size());
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) r[i] = s * v[i];
    return r;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const ScalarExpr& s) { return s.is_zero(); });
}

std::string to_string(const Vec& v, const std::vector<std::string>& basis_names) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        std::string coeff = v[i].to_string();
        std::string piece;
        if (coeff == "1") piece = basis_names.at(i);
        else if (coeff == "-1") piece = "-" + basis_names.at(i);
        else if (v[i].is_single_term()) piece = coeff + "*" + basis_names.at(i);
        else piece = "(" + coeff + ")*" + basis_names.at(i);
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Matrices

namespace {

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
    Matrix r;
    r.reserve(m.size() - 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) continue;
        std::vector<ScalarExpr> line;
        line.reserve(m.size() - 1);
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != col) line.push_back(m[i][j]);
        r.push_back(std::move(line));
    }
    return r;
}

}  // namespace

ScalarExpr determinant(const Matrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of a non-square matrix");
    if (n == 0) return ScalarExpr(1);
    if (n == 1) return m[0][0];
    // Laplace expansion along the sparsest row.
    std::size_t best = 0;
    std::size_t best_nonzero = n + 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto nz = static_cast<std::size_t>(
            std::count_if(m[i].begin(), m[i].end(), [](const ScalarExpr& s) { return !s.is_zero(); }));
        if (nz < best_nonzero) {
            best_nonzero = nz;
            best = i;
        }
    }
    ScalarExpr det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[best][j].is_zero()) continue;
        ScalarExpr cof = m[best][j] * determinant(minor_of(m, best, j));
        if ((best + j) % 2) det -= cof;
        else det += cof;
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.size();
    ScalarExpr inv_det = determinant(m).inverse();
    Matrix r(n, std::vector<ScalarExpr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ScalarExpr c = determinant(minor_of(m, j, i)) * inv_det;
            r[i][j] = (i + j) % 2 ? -c : c;
        }
    }
    return r;
}

std::size_t rational_rank(const Matrix& m) {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) {
        std::vector<Rational> line;
        for (const auto& e : row) {
            auto c = e.constant_value();
            if (!c) throw Error("rank requires constant entries, got " + e.to_string());
            line.push_back(*c);
        }
        a.push_back(std::move(line));
    }
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rational f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Chart and vector fields

Chart::Chart(std::vector<std::string> coords, std::vector<std::string> params) {
    if (coords.empty() || coords.size() % 2 == 0)
        throw Error("dimension must be odd, got " + std::to_string(coords.size()));
    symbols_ = make_symbols(std::move(coords), std::move(params));
}

bool VectorField::operator==(const VectorField& o) const { return components == o.components; }

ScalarExpr apply(const VectorField& X, const ScalarExpr& f) {
    ScalarExpr r;
    for (std::size_t i = 0; i < X.components.size(); ++i) {
        if (X.components[i].is_zero()) continue;
        r += X.components[i] * f.partial(static_cast<int>(i));
    }
    return r;
}

VectorField bracket(const VectorField& X, const VectorField& Y) {
    if (X.components.size() != Y.components.size()) throw ChartMismatch();
    VectorField r{Vec(X.components.size())};
    for (std::size_t i = 0; i < r.components.size(); ++i)
        r.components[i] = apply(X, Y.components[i]) - apply(Y, X.components[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(Chart chart, std::vector<VectorField> members, Matrix gram)
    : chart_(std::move(chart)), members_(std::move(members)), gram_(std::move(gram)) {
    const std::size_t d = chart_.dimension();
    if (members_.size() != d)
        throw Error("frame has " + std::to_string(members_.size()) + " members, chart dimension is " +
                    std::to_string(d));
    for (const auto& m : members_)
        if (m.components.size() != d) throw ChartMismatch();
    if (gram_.size() != d) throw Error("gram matrix has wrong size");
    for (const auto& row : gram_)
        if (row.size() != d) throw Error("gram matrix has wrong size");
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (gram_[a][b] != gram_[b][a]) throw Error("gram matrix is not symmetric");

    Matrix components;
    for (const auto& m : members_) components.push_back(m.components);
    try {
        inverse_components_ = inverse(components);
    } catch (const NonInvertible& e) {
        throw Error("frame members are not linearly independent (determinant " +
                    determinant(components).to_string() + " is not invertible)");
    }
    structure_.resize(d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            structure_[a * d + b] = to_frame(pk::bracket(members_[a], members_[b]));
}

bool Frame::diagonal_gram() const {
    for (std::size_t a = 0; a < dimension(); ++a)
        for (std::size_t b = 0; b < dimension(); ++b)
            if (a != b && !gram_[a][b].is_zero()) return false;
    return true;
}

bool Frame::pseudo_orthonormal() const {
    if (!diagonal_gram()) return false;
    for (std::size_t a = 0; a < dimension(); ++a) {
        auto c = gram_[a][a].constant_value();
        if (!c || (*c != 1 && *c != -1)) return false;
    }
    return true;
}

ScalarExpr Frame::inverse_gram(std::size_t a) const {
    if (!diagonal_gram()) throw NonInvertible("gram matrix is not diagonal");
    return gram_[a][a].inverse();
}

Vec Frame::to_frame(const VectorField& X) const {
    const std::size_t d = dimension();
    if (X.components.size() != d) throw ChartMismatch();
    Vec r(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (X.components[i].is_zero()) continue;
        for (std::size_t a = 0; a < d; ++a)
            if (!inverse_components_[i][a].is_zero()) r[a] += X.components[i] * inverse_components_[i][a];
    }
    return r;
}

VectorField Frame::from_frame(const Vec& x) const {
    const std::size_t d = dimension();
    VectorField r{Vec(d)};
    for (std::size_t a = 0; a < d; ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t i = 0; i < d; ++i)
            if (!members_[a].components[i].is_zero()) r.components[i] += x[a] * members_[a].components[i];
    }
    return r;
}

ScalarExpr Frame::derivative(std::size_t a, const ScalarExpr& f) const { return apply(members_[a], f); }

ScalarExpr Frame::derivative(const Vec& X, const ScalarExpr& f) const {
    ScalarExpr r;
    if (f.is_constant()) return r;
    for (std::size_t a = 0; a < dimension(); ++a)
        if (!X[a].is_zero()) r += X[a] * derivative(a, f);
    return r;
}

Vec Frame::bracket(const Vec& X, const Vec& Y) const {
    const std::size_t d = dimension();
    Vec r(d);
    for (std::size_t a = 0; a < d; ++a) {
        if (X[a].is_zero()) continue;
        for (std::size_t b = 0; b < d; ++b) {
            if (Y[b].is_zero()) continue;
            const Vec& c = structure(a, b);
            ScalarExpr w = X[a] * Y[b];
            for (std::size_t k = 0; k < d; ++k)
                if (!c[k].is_zero()) r[k] += w * c[k];
        }
    }
    for (std::size_t k = 0; k < d; ++k) r[k] += derivative(X, Y[k]) - derivative(Y, X[k]);
    return r;
}

ScalarExpr Frame::metric(const Vec& X, const Vec& Y) const {
    ScalarExpr r;
    for (std::size_t a = 0; a < dimension(); ++a) {
        if (X[a].is_zero()) continue;
        for (std::size_t b = 0; b < dimension(); ++b)
            if (!Y[b].is_zero() && !gram_[a][b].is_zero()) r += X[a] * Y[b] * gram_[a][b];
    }
    return r;
}

Vec Frame::lower(const Vec& X) const {
    Vec r(dimension());
    for (std::size_t a = 0; a < dimension(); ++a) r[a] = metric(X, basis_vec(dimension(), a));
    return r;
}

// ---------------------------------------------------------------------------
// Tensor

Tensor::Tensor(std::size_t dim, int up, int down) : dim_(dim), up_(up), down_(down) {
    if (up < 0 || up > 1 || down < 0) throw Error("unsupported tensor valence");
    std::size_t n = 1;
    for (int i = 0; i < up + down; ++i) n *= dim;
    data_.resize(n);
}

Tensor Tensor::from_matrix(const Matrix& m, bool require_symmetric) {
    Tensor t(m.size(), 0, 2);
    for (std::size_t a = 0; a < m.size(); ++a) {
        if (m[a].size() != m.size()) throw Error("tensor matrix is not square");
        for (std::size_t b = 0; b < m.size(); ++b) {
            if (require_symmetric && m[a][b] != m[b][a])
                throw Error("tensor declared symmetric is not symmetric");
            t.at({a, b}) = m[a][b];
        }
    }
    return t;
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
    return flatten(std::span<const std::size_t>(idx.begin(), idx.size()));
}

std::size_t Tensor::flatten(std::span<const std::size_t> idx) const {
    if (idx.size() != static_cast<std::size_t>(up_ + down_)) throw Error("tensor index arity mismatch");
    std::size_t o = 0;
    for (std::size_t i : idx) {
        if (i >= dim_) throw Error("tensor index out of range");
        o = o * dim_ + i;
    }
    return o;
}

std::vector<std::size_t> Tensor::unflatten(std::size_t i) const {
    std::vector<std::size_t> idx(static_cast<std::size_t>(up_ + down_));
    for (std::size_t k = idx.size(); k-- > 0;) {
        idx[k] = i % dim_;
        i /= dim_;
    }
    return idx;
}

void Tensor::eval_rec(std::span<const Vec> args, std::size_t slot, std::size_t base,
                      const ScalarExpr& weight, Vec& out) const {
    if (slot == args.size()) {
        if (up_ == 1) {
            for (std::size_t u = 0; u < dim_; ++u) {
                std::size_t o = u;
                for (std::size_t k = 0; k < args.size(); ++k) o *= dim_;
                const ScalarExpr& c = data_[o + base];
                if (!c.is_zero()) out[u] += weight * c;
            }
        } else if (!data_[base].is_zero()) {
            out[0] += weight * data_[base];
        }
        return;
    }
    const Vec& arg = args[slot];
    for (std::size_t j = 0; j < dim_; ++j) {
        if (arg[j].is_zero()) continue;
        eval_rec(args, slot + 1, base * dim_ + j, weight * arg[j], out);
    }
}

Vec Tensor::eval(std::span<const Vec> args) const {
    if (args.size() != static_cast<std::size_t>(down_))
        throw Error("tensor expects " + std::to_string(down_) + " arguments, got " +
                    std::to_string(args.size()));
    for (const auto& a : args)
        if (a.size() != dim_) throw ChartMismatch();
    Vec out(up_ == 1 ? dim_ : 1);
    eval_rec(args, 0, 0, ScalarExpr(1), out);
    return out;
}

ScalarExpr Tensor::scalar(std::span<const Vec> args) const {
    if (up_ != 0) throw Error("tensor is vector-valued");
    return eval(args)[0];
}

ScalarExpr Tensor::scalar(std::initializer_list<Vec> args) const {
    return scalar(std::span<const Vec>(args.begin(), args.size()));
}

Vec Tensor::vector(std::initializer_list<Vec> args) const {
    if (up_ != 1) throw Error("tensor is scalar-valued");
    return eval(std::span<const Vec>(args.begin(), args.size()));
}

bool Tensor::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const ScalarExpr& s) { return s.is_zero(); });
}

Tensor Tensor::operator+(const Tensor& o) const {
    if (dim_ != o.dim_ || up_ != o.up_ || down_ != o.down_) throw Error("tensor valence mismatch");
    Tensor r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
    if (dim_ != o.dim_ || up_ != o.up_ || down_ != o.down_) throw Error("tensor valence mismatch");
    Tensor r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

Tensor Tensor::scaled(const ScalarExpr& s) const {
    Tensor r = *this;
    for (auto& c : r.data_)
        if (!c.is_zero()) c = c * s;
    return r;
}

bool Tensor::operator==(const Tensor& o) const {
    return dim_ == o.dim_ && up_ == o.up_ && down_ == o.down_ && (*this - o).is_zero();
}

std::string Witness::describe(const std::vector<std::string>& names) const {
    std::string args;
    for (std::size_t k = static_cast<std::size_t>(up); k < index.size(); ++k)
        args += (k > static_cast<std::size_t>(up) ? "," : "") + names.at(index[k]);
    std::string where = "(" + args + ")";
    if (up == 1) where += " component " + names.at(index[0]);
    return where + ": " + value.to_string();
}

std::optional<Witness> first_nonzero(const Tensor& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!t.flat(i).is_zero()) return Witness{t.unflatten(i), t.flat(i), t.up()};
    return std::nullopt;
}

Tensor covector(const Vec& a) {
    Tensor t(a.size(), 0, 1);
    for (std::size_t i = 0; i < a.size(); ++i) t.at({i}) = a[i];
    return t;
}

Tensor metric_tensor(const Frame& frame) { return Tensor::from_matrix(frame.gram(), true); }

ScalarExpr metric_eval(const Frame& frame, const Tensor& g, const VectorField& X, const VectorField& Y) {
    if (g.up() != 0 || g.down() != 2) throw Error("metric must be a (0,2) tensor");
    return g.scalar({frame.to_frame(X), frame.to_frame(Y)});
}

std::variant<ScalarExpr, VectorField> tensor_apply(const Frame& frame, const Tensor& t,
                                                   const std::vector<VectorField>& args) {
    std::vector<Vec> fa;
    fa.reserve(args.size());
    for (const auto& a : args) fa.push_back(frame.to_frame(a));
    Vec out = t.eval(fa);
    if (t.up() == 0) return out[0];
    return frame.from_frame(out);
}

Tensor outer(const Vec& a, const Vec& b) {
    Tensor t(a.size(), 0, 2);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) t.at({i, j}) = a[i] * b[j];
    return t;
}

Tensor exterior_derivative_1form(const Frame& frame, const Vec& omega) {
    const std::size_t d = frame.dimension();
    Tensor t(d, 0, 2);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            ScalarExpr v = frame.derivative(a, omega[b]) - frame.derivative(b, omega[a]);
            const Vec& c = frame.structure(a, b);
            for (std::size_t k = 0; k < d; ++k)
                if (!c[k].is_zero()) v -= omega[k] * c[k];
            t.at({a, b}) = v;
        }
    }
    return t;
}

std::vector<std::string> default_frame_names(std::size_t dim) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dim; ++i) names.push_back("E" + std::to_string(i + 1));
    return names;
}

}  // namespace pk
