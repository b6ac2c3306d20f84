#pragma once

// Exact linear algebra over a prime field GF(p): dense matrices, canonical
// (reduced column echelon) subspaces, and the lattice operations used by the
// filtration formulas. Everything is immutable after construction and all
// results are canonical, so subspace equality is entry-wise basis equality.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectdec {

bool is_prime(long long n);

// Arithmetic in GF(p), p prime.
class Field {
public:
    explicit Field(int p);

    int p() const { return p_; }

    int reduce(long long v) const {
        int r = static_cast<int>(v % p_);
        return r < 0 ? r + p_ : r;
    }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const {
        return static_cast<int>(static_cast<long long>(a) * b % p_);
    }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int inv(int a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    int p_;
};

// Dense matrix over GF(p), row-major. Empty shapes (0 x n, n x 0) are legal
// and behave as the corresponding zero maps.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), field_(2) {}
    Matrix(int rows, int cols, Field f);
    Matrix(int rows, int cols, Field f, std::vector<int> entries);

    static Matrix identity(int n, Field f);
    static Matrix zero(int rows, int cols, Field f) { return Matrix(rows, cols, f); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }

    int at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v) { e_[static_cast<size_t>(r) * cols_ + c] = field_.reduce(v); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    Matrix hstack(const Matrix& o) const;  // [this | o]
    Matrix vstack(const Matrix& o) const;  // [this ; o]
    Matrix column(int c) const;
    Matrix columns(const std::vector<int>& idx) const;

    bool is_zero() const;
    std::string str() const;

private:
    int rows_, cols_;
    Field field_;
    std::vector<int> e_;
};

int rank(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws std::invalid_argument if singular

// Subspace of k^n held by a reduced-column-echelon basis; the canonical form
// is unique per subspace.
class Subspace {
public:
    Subspace() : ambient_(0), basis_(0, 0, Field(2)) {}
    // Canonicalizes the span of the given columns.
    static Subspace span(int ambient_dim, const Matrix& columns);
    static Subspace zero(int ambient_dim, Field f);
    static Subspace full(int ambient_dim, Field f);

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

private:
    int ambient_;
    Matrix basis_;
};

Subspace kernel_basis(const Matrix& m);
Subspace image_basis(const Matrix& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, const Subspace& b);  // b subset of a
bool member(const Subspace& a, const Matrix& v);      // column vector v in a

// {v : m v in s}; s lives in the codomain of m.
Subspace preimage(const Matrix& m, const Subspace& s);
// m(s); s lives in the domain of m.
Subspace pushforward(const Matrix& m, const Subspace& s);

// Deterministic complement W of `inner` in `outer` chosen inside `constraint`:
// W + inner = outer, W cap inner = 0, W within outer cap constraint. The
// precondition inner + (outer cap constraint) = outer must hold; a violation
// signals a failed linking condition upstream and throws.
Subspace complement_within(const Subspace& inner, const Subspace& outer,
                           const Subspace& constraint);

// Same complement, returned as explicit basis columns before canonicalization
// (the vectors actually picked by the greedy pivot completion).
Matrix complement_within_columns(const Subspace& inner, const Subspace& outer,
                                 const Subspace& constraint);

// Express each column of v in the given (independent-column) basis; throws if
// some column is outside the span.
Matrix coordinates_in(const Matrix& basis, const Matrix& v);

}  // namespace rectdec
