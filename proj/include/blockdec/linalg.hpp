#pragma once

// Dense exact linear algebra over a prime field GF(p).
//
// Vectors are column vectors for the purpose of matrix application
// (m * v), but subspace bases are stored as the *rows* of a matrix kept in
// reduced row echelon form. The rref basis is unique for a subspace, so two
// Subspace values are equal iff their stored bases are entry-wise equal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blockdec {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

inline constexpr Scalar kDefaultPrime = 32003;

class Field {
public:
    /// Throws std::invalid_argument unless 2 <= p < 2^31 and p is prime.
    explicit Field(Scalar p = kDefaultPrime);

    Scalar prime() const noexcept { return p_; }

    Scalar add(Scalar a, Scalar b) const noexcept {
        const Scalar s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    /// Throws std::domain_error on zero.
    Scalar inv(Scalar a) const;
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
    /// Reduces an arbitrary signed integer into [0, p).
    Scalar from_int(std::int64_t v) const noexcept;
    /// Symmetric lift into (-p/2, p/2], for display only.
    std::int64_t to_signed(Scalar a) const noexcept;

    friend bool operator==(const Field&, const Field&) = default;

private:
    Scalar p_;
};

bool is_prime(std::uint64_t n);

class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols);
    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static Matrix identity(Field field, std::size_t n);
    static Matrix zero(Field field, std::size_t rows, std::size_t cols) {
        return Matrix(field, rows, cols);
    }
    /// Builds from signed integer rows, reducing mod p. All rows must share a length;
    /// `cols` is used when `rows` is empty.
    static Matrix from_rows(Field field, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols = 0);
    static Matrix column(Field field, const Vector& v);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Scalar> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Scalar>& entries() const noexcept { return data_; }

    bool is_zero() const noexcept;
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(Scalar s) const;

    /// [this | rhs]
    Matrix hstack(const Matrix& rhs) const;
    /// [this ; rhs]
    Matrix vstack(const Matrix& rhs) const;
    /// diag(this, rhs)
    Matrix block_diagonal(const Matrix& rhs) const;
    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block);
    Matrix select_rows(std::size_t first, std::size_t count) const;

    std::string to_string() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Throws std::invalid_argument if `m` is not square or singular.
Matrix inverse(const Matrix& m);

class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Field field, std::size_t ambient);
    static Subspace full(Field field, std::size_t ambient);
    /// Span of the rows of `generators`.
    static Subspace row_span(const Matrix& generators);
    static Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& vectors);

    const Field& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    bool is_zero() const noexcept { return dim() == 0; }
    bool is_full() const noexcept { return dim() == ambient_dim(); }

    /// Rows form the canonical rref basis.
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vector basis_vector(std::size_t i) const;

    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.basis_ == b.basis_;
    }

private:
    explicit Subspace(RrefResult r);

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}, a subspace of F^{m.cols()}.
Subspace kernel_basis(const Matrix& m);
/// Column space of m, a subspace of F^{m.rows()}.
Subspace image_basis(const Matrix& m);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
/// m(u); requires m.cols() == u.ambient_dim().
Subspace apply_to_subspace(const Matrix& m, const Subspace& u);
/// {x : m x in u}; requires m.rows() == u.ambient_dim().
Subspace preimage(const Matrix& m, const Subspace& u);
/// A complement c of u inside w (c ∩ u = 0, c + u = w), built by scanning w's
/// basis rows in order and keeping each one that raises the rank. Throws
/// std::invalid_argument unless u ⊆ w.
Subspace complement_in(const Subspace& u, const Subspace& w);
bool membership(const Subspace& u, std::span<const Scalar> v);

}  // namespace blockdec
