#include "rectdec/exactfield.hpp"

#include <algorithm>
#include <sstream>

namespace rectdec {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(int p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
}

int Field::inv(int a) const {
    a %= p_;
    if (a < 0) a += p_;
    if (a == 0) throw std::invalid_argument("division by zero in GF(p)");
    // extended Euclid
    int t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return t < 0 ? t + p_ : t;
}

Matrix::Matrix(int rows, int cols, Field f)
    : rows_(rows), cols_(cols), field_(f), e_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimensions");
}

Matrix::Matrix(int rows, int cols, Field f, std::vector<int> entries)
    : rows_(rows), cols_(cols), field_(f), e_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimensions");
    if (e_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("entry count does not match matrix shape");
    for (auto& v : e_) v = field_.reduce(v);
}

Matrix Matrix::identity(int n, Field f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || field_ != o.field_)
        throw std::invalid_argument("matrix product shape/field mismatch");
    Matrix r(rows_, o.cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.set(i, j, r.at(i, j) + field_.mul(a, o.at(k, j)));
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        throw std::invalid_argument("matrix sum shape/field mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.add(e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
        throw std::invalid_argument("matrix difference shape/field mismatch");
    Matrix r(rows_, cols_, field_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_.sub(e_[i], o.e_[i]);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && e_ == o.e_;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (rows_ != o.rows_ || field_ != o.field_)
        throw std::invalid_argument("hstack row/field mismatch");
    Matrix r(rows_, cols_ + o.cols_, field_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
        for (int j = 0; j < o.cols_; ++j) r.set(i, cols_ + j, o.at(i, j));
    }
    return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
    if (cols_ != o.cols_ || field_ != o.field_)
        throw std::invalid_argument("vstack column/field mismatch");
    Matrix r(rows_ + o.rows_, cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, o.at(i, j));
    return r;
}

Matrix Matrix::column(int c) const { return columns({c}); }

Matrix Matrix::columns(const std::vector<int>& idx) const {
    Matrix r(rows_, static_cast<int>(idx.size()), field_);
    for (size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] < 0 || idx[j] >= cols_) throw std::out_of_range("column index out of range");
        for (int i = 0; i < rows_; ++i) r.set(i, static_cast<int>(j), at(i, idx[j]));
    }
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " [";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

namespace {

// Reduced column echelon form in place, pivots top-to-bottom, left-to-right.
// Returns the pivot row of each pivot column (rank = size).
std::vector<int> rcef_inplace(Matrix& m) {
    const Field& f = m.field();
    std::vector<int> pivot_rows;
    int pc = 0;
    for (int r = 0; r < m.rows() && pc < m.cols(); ++r) {
        int sel = -1;
        for (int c = pc; c < m.cols(); ++c)
            if (m.at(r, c) != 0) { sel = c; break; }
        if (sel == -1) continue;
        if (sel != pc)
            for (int i = 0; i < m.rows(); ++i) {
                int tmp = m.at(i, pc);
                m.set(i, pc, m.at(i, sel));
                m.set(i, sel, tmp);
            }
        int piv_inv = f.inv(m.at(r, pc));
        for (int i = 0; i < m.rows(); ++i) m.set(i, pc, f.mul(m.at(i, pc), piv_inv));
        for (int c = 0; c < m.cols(); ++c) {
            if (c == pc) continue;
            int v = m.at(r, c);
            if (v == 0) continue;
            for (int i = 0; i < m.rows(); ++i)
                m.set(i, c, f.sub(m.at(i, c), f.mul(v, m.at(i, pc))));
        }
        pivot_rows.push_back(r);
        ++pc;
    }
    return pivot_rows;
}

Matrix take_cols(const Matrix& m, int n) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    return m.columns(idx);
}

}  // namespace

int rank(const Matrix& m) {
    Matrix w = m;
    return static_cast<int>(rcef_inplace(w).size());
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    // column-reduce [m; I]; if the top becomes I the bottom is m^{-1}
    Matrix w = m.vstack(Matrix::identity(m.cols(), m.field()));
    rcef_inplace(w);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (w.at(i, j) != (i == j ? 1 : 0))
                throw std::invalid_argument("matrix is singular");
    Matrix inv(m.cols(), m.cols(), m.field());
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) inv.set(i, j, w.at(m.rows() + i, j));
    return inv;
}

Subspace Subspace::span(int ambient_dim, const Matrix& columns) {
    if (columns.rows() != ambient_dim)
        throw std::invalid_argument("basis rows do not match ambient dimension");
    Matrix w = columns;
    int r = static_cast<int>(rcef_inplace(w).size());
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = take_cols(w, r);
    return s;
}

Subspace Subspace::zero(int ambient_dim, Field f) {
    return span(ambient_dim, Matrix(ambient_dim, 0, f));
}

Subspace Subspace::full(int ambient_dim, Field f) {
    return span(ambient_dim, Matrix::identity(ambient_dim, f));
}

Subspace kernel_basis(const Matrix& m) {
    // column-reduce [m; I]; kernel = bottom parts of columns whose top is zero
    Matrix w = m.vstack(Matrix::identity(m.cols(), m.field()));
    rcef_inplace(w);
    std::vector<int> idx;
    for (int c = 0; c < w.cols(); ++c) {
        bool top_zero = true;
        for (int i = 0; i < m.rows() && top_zero; ++i) top_zero = (w.at(i, c) == 0);
        if (top_zero) idx.push_back(c);
    }
    Matrix ker(m.cols(), static_cast<int>(idx.size()), m.field());
    for (size_t j = 0; j < idx.size(); ++j)
        for (int i = 0; i < m.cols(); ++i) ker.set(i, static_cast<int>(j), w.at(m.rows() + i, idx[j]));
    return Subspace::span(m.cols(), ker);
}

Subspace image_basis(const Matrix& m) { return Subspace::span(m.rows(), m); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field())
        throw std::invalid_argument("subspace sum ambient/field mismatch");
    return Subspace::span(a.ambient_dim(), a.basis().hstack(b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field())
        throw std::invalid_argument("subspace intersection ambient/field mismatch");
    // kernel of [A | B] gives pairs (x, y) with A x = -B y; intersection = A x
    Matrix cat = a.basis().hstack(b.basis());
    Subspace ker = kernel_basis(cat);
    Matrix xs(a.dim(), ker.dim(), a.field());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < ker.dim(); ++j) xs.set(i, j, ker.basis().at(i, j));
    return Subspace::span(a.ambient_dim(), a.basis() * xs);
}

bool contains(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.field() != b.field())
        throw std::invalid_argument("subspace containment ambient/field mismatch");
    return sum(a, b) == a;
}

bool member(const Subspace& a, const Matrix& v) {
    return contains(a, Subspace::span(a.ambient_dim(), v));
}

Subspace preimage(const Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.rows())
        throw std::invalid_argument("preimage: subspace does not live in the codomain");
    // v with m v in s <=> exists y: m v - B y = 0; take v-components of the kernel
    Matrix cat = m.hstack(s.basis());
    Subspace ker = kernel_basis(cat);
    Matrix vs(m.cols(), ker.dim(), m.field());
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < ker.dim(); ++j) vs.set(i, j, ker.basis().at(i, j));
    return Subspace::span(m.cols(), vs);
}

Subspace pushforward(const Matrix& m, const Subspace& s) {
    if (s.ambient_dim() != m.cols())
        throw std::invalid_argument("pushforward: subspace does not live in the domain");
    return Subspace::span(m.rows(), m * s.basis());
}

Matrix complement_within_columns(const Subspace& inner, const Subspace& outer,
                                 const Subspace& constraint) {
    if (inner.ambient_dim() != outer.ambient_dim() ||
        inner.ambient_dim() != constraint.ambient_dim() || inner.field() != outer.field() ||
        inner.field() != constraint.field())
        throw std::invalid_argument("complement_within ambient/field mismatch");
    if (!contains(outer, inner))
        throw std::invalid_argument("complement_within: inner is not contained in outer");
    Subspace gen = intersection(outer, constraint);
    if (sum(inner, gen) != outer)
        throw std::invalid_argument(
            "complement_within: inner + (outer cap constraint) does not reach outer");
    Matrix picked(inner.ambient_dim(), 0, inner.field());
    Matrix current = inner.basis();
    int cur_rank = inner.dim();
    for (int c = 0; c < gen.dim(); ++c) {
        Matrix cand = current.hstack(gen.basis().column(c));
        if (rank(cand) > cur_rank) {
            picked = picked.hstack(gen.basis().column(c));
            current = cand;
            ++cur_rank;
        }
    }
    return picked;
}

Subspace complement_within(const Subspace& inner, const Subspace& outer,
                           const Subspace& constraint) {
    Matrix w = complement_within_columns(inner, outer, constraint);
    return Subspace::span(inner.ambient_dim(), w);
}

Matrix coordinates_in(const Matrix& basis, const Matrix& v) {
    if (basis.rows() != v.rows() || basis.field() != v.field())
        throw std::invalid_argument("coordinates_in shape/field mismatch");
    // a kernel vector (x, s) of [basis | v_col] with s != 0 gives
    // basis * x = -s * v_col, so the coordinates are -x / s
    Matrix result(basis.cols(), v.cols(), basis.field());
    const Field& f = basis.field();
    for (int c = 0; c < v.cols(); ++c) {
        Subspace ker = kernel_basis(basis.hstack(v.column(c)));
        int found = -1;
        for (int j = 0; j < ker.dim(); ++j)
            if (ker.basis().at(basis.cols(), j) != 0) { found = j; break; }
        if (found == -1)
            throw std::invalid_argument("coordinates_in: vector outside the span of the basis");
        int scale = f.inv(ker.basis().at(basis.cols(), found));
        for (int i = 0; i < basis.cols(); ++i)
            result.set(i, c, f.neg(f.mul(scale, ker.basis().at(i, found))));
    }
    return result;
}

}  // namespace rectdec
