#include "blockdec/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace blockdec {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

Field::Field(Scalar p) : p_(p) {
    if (p >= (Scalar{1} << 31) || !is_prime(p)) {
        throw std::invalid_argument("field modulus " + std::to_string(p) +
                                    " is not a prime below 2^31");
    }
}

Scalar Field::inv(Scalar a) const {
    if (a % p_ == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2)
    std::uint64_t result = 1;
    std::uint64_t base = a % p_;
    std::uint64_t e = p_ - 2;
    while (e > 0) {
        if (e & 1U) result = result * base % p_;
        base = base * base % p_;
        e >>= 1U;
    }
    return static_cast<Scalar>(result);
}

Scalar Field::from_int(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
}

std::int64_t Field::to_signed(Scalar a) const noexcept {
    const auto v = static_cast<std::int64_t>(a);
    return v > static_cast<std::int64_t>(p_ / 2) ? v - static_cast<std::int64_t>(p_) : v;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count does not match its shape");
    }
    for (Scalar& x : data_) x %= field_.prime();
}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<std::int64_t>>& rows,
                         std::size_t cols) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.from_int(rows[r][c]);
    }
    return m;
}

Matrix Matrix::column(Field field, const Vector& v) {
    return Matrix(field, v.size(), 1, v);
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_) + " * " +
                                    std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    }
    if (field_ != rhs.field_) throw std::invalid_argument("matrix product over different fields");
    Matrix out(field_, rows_, rhs.cols_);
    const std::uint64_t p = field_.prime();
    std::vector<std::uint64_t> acc(rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint64_t a = (*this)(r, k);
            if (a == 0) continue;
            const Scalar* brow = rhs.data_.data() + k * rhs.cols_;
            for (std::size_t c = 0; c < rhs.cols_; ++c) acc[c] = (acc[c] + a * brow[c]) % p;
        }
        for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) = static_cast<Scalar>(acc[c]);
    }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Scalar s = 0;
        for (std::size_t c = 0; c < cols_; ++c) s = field_.add(s, field_.mul((*this)(r, c), v[c]));
        out[r] = s;
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    if (field_ != rhs.field_) throw std::invalid_argument("matrix sum over different fields");
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    if (field_ != rhs.field_) throw std::invalid_argument("matrix difference over different fields");
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    return out;
}

Matrix Matrix::scaled(Scalar s) const {
    Matrix out(*this);
    for (Scalar& x : out.data_) x = field_.mul(x, s);
    return out;
}

Matrix Matrix::hstack(const Matrix& rhs) const {
    if (rows_ != rhs.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix out(field_, rows_, cols_ + rhs.cols_);
    out.set_block(0, 0, *this);
    out.set_block(0, cols_, rhs);
    return out;
}

Matrix Matrix::vstack(const Matrix& rhs) const {
    if (cols_ != rhs.cols_) throw std::invalid_argument("vstack column mismatch");
    Matrix out(field_, rows_ + rhs.rows_, cols_);
    out.set_block(0, 0, *this);
    out.set_block(rows_, 0, rhs);
    return out;
}

Matrix Matrix::block_diagonal(const Matrix& rhs) const {
    Matrix out(field_, rows_ + rhs.rows_, cols_ + rhs.cols_);
    out.set_block(0, 0, *this);
    out.set_block(rows_, cols_, rhs);
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) {
        throw std::out_of_range("set_block exceeds matrix bounds");
    }
    for (std::size_t r = 0; r < block.rows_; ++r)
        std::copy_n(block.data_.data() + r * block.cols_, block.cols_,
                    data_.data() + (r0 + r) * cols_ + c0);
}

Matrix Matrix::select_rows(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw std::out_of_range("select_rows out of range");
    Matrix out(field_, count, cols_);
    std::copy_n(data_.data() + first * cols_, count * cols_, out.data_.data());
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------

RrefResult rref(const Matrix& m) {
    const Field& f = m.field();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
        std::size_t sel = pivot_row;
        while (sel < a.rows() && a(sel, c) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != pivot_row) {
            auto r1 = a.row(sel);
            auto r2 = a.row(pivot_row);
            std::swap_ranges(r1.begin(), r1.end(), r2.begin());
        }
        const Scalar scale = f.inv(a(pivot_row, c));
        auto prow = a.row(pivot_row);
        for (std::size_t k = c; k < a.cols(); ++k) prow[k] = f.mul(prow[k], scale);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row) continue;
            const Scalar factor = a(r, c);
            if (factor == 0) continue;
            auto row = a.row(r);
            for (std::size_t k = c; k < a.cols(); ++k) row[k] = f.sub(row[k], f.mul(factor, prow[k]));
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    return RrefResult{std::move(a), pivot_row, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RrefResult r = rref(m.hstack(Matrix::identity(m.field(), n)));
    if (r.rank < n || (n > 0 && r.pivots[n - 1] >= n)) {
        throw std::invalid_argument("inverse of a singular matrix");
    }
    Matrix out(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = r.reduced(i, n + j);
    return out;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(RrefResult r) : basis_(r.reduced.select_rows(0, r.rank)), pivots_(std::move(r.pivots)) {}

Subspace Subspace::zero(Field field, std::size_t ambient) {
    return Subspace(RrefResult{Matrix(field, 0, ambient), 0, {}});
}

Subspace Subspace::full(Field field, std::size_t ambient) {
    return row_span(Matrix::identity(field, ambient));
}

Subspace Subspace::row_span(const Matrix& generators) { return Subspace(rref(generators)); }

Subspace Subspace::span(Field field, std::size_t ambient, const std::vector<Vector>& vectors) {
    Matrix g(field, vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw std::invalid_argument("span: vector length mismatch");
        for (std::size_t j = 0; j < ambient; ++j) g(i, j) = vectors[i][j] % field.prime();
    }
    return row_span(g);
}

Vector Subspace::basis_vector(std::size_t i) const {
    auto r = basis_.row(i);
    return Vector(r.begin(), r.end());
}

bool Subspace::contains(std::span<const Scalar> v) const {
    if (v.size() != ambient_dim()) throw std::invalid_argument("membership: vector length mismatch");
    const Field& f = field();
    Vector w(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Scalar factor = w[pivots_[i]];
        if (factor == 0) continue;
        auto b = basis_.row(i);
        for (std::size_t k = pivots_[i]; k < w.size(); ++k) w[k] = f.sub(w[k], f.mul(factor, b[k]));
    }
    return std::all_of(w.begin(), w.end(), [](Scalar x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw std::invalid_argument("containment: ambient mismatch");
    if (other.dim() > dim()) return false;
    for (std::size_t i = 0; i < other.dim(); ++i) {
        if (!contains(other.basis_.row(i))) return false;
    }
    return true;
}

Subspace kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    Matrix gens(f, m.cols() - r.rank, m.cols());
    std::size_t g = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        gens(g, free) = 1;
        for (std::size_t i = 0; i < r.rank; ++i) gens(g, r.pivots[i]) = f.neg(r.reduced(i, free));
        ++g;
    }
    return Subspace::row_span(gens);
}

Subspace image_basis(const Matrix& m) { return Subspace::row_span(m.transpose()); }

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspace sum: ambient mismatch");
    if (u.is_zero()) return v;
    if (v.is_zero()) return u;
    return Subspace::row_span(u.basis().vstack(v.basis()));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspace intersection: ambient mismatch");
    if (u.is_zero() || v.is_full()) return u;
    if (v.is_zero() || u.is_full()) return v;
    // z = (x, y) with x U + y V = 0 gives x U in U ∩ V.
    const Matrix stacked = u.basis().vstack(v.basis());
    const Subspace relations = kernel_basis(stacked.transpose());
    if (relations.is_zero()) return Subspace::zero(u.field(), u.ambient_dim());
    const Matrix coeffs = relations.basis().select_rows(0, relations.dim());
    Matrix x(u.field(), coeffs.rows(), u.dim());
    for (std::size_t r = 0; r < coeffs.rows(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) x(r, c) = coeffs(r, c);
    return Subspace::row_span(x * u.basis());
}

Subspace apply_to_subspace(const Matrix& m, const Subspace& u) {
    if (m.cols() != u.ambient_dim()) throw std::invalid_argument("apply_to_subspace: dimension mismatch");
    return Subspace::row_span(u.basis() * m.transpose());
}

Subspace preimage(const Matrix& m, const Subspace& u) {
    if (m.rows() != u.ambient_dim()) throw std::invalid_argument("preimage: dimension mismatch");
    // y in u  <=>  n y = 0 for every row n of u's annihilator.
    const Subspace annihilator = kernel_basis(u.basis());
    return kernel_basis(annihilator.basis() * m);
}

Subspace complement_in(const Subspace& u, const Subspace& w) {
    if (u.ambient_dim() != w.ambient_dim()) throw std::invalid_argument("complement_in: ambient mismatch");
    if (!w.contains(u)) throw std::invalid_argument("complement_in: u is not contained in w");
    Subspace acc = u;
    std::vector<Vector> chosen;
    for (std::size_t i = 0; i < w.dim() && acc.dim() < w.dim(); ++i) {
        Vector v = w.basis_vector(i);
        if (acc.contains(v)) continue;
        acc = subspace_sum(acc, Subspace::span(w.field(), w.ambient_dim(), {v}));
        chosen.push_back(std::move(v));
    }
    return Subspace::span(w.field(), w.ambient_dim(), chosen);
}

bool membership(const Subspace& u, std::span<const Scalar> v) { return u.contains(v); }

}  // namespace blockdec
