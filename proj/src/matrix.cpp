#include "dext/matrix.hpp"

#include <sstream>

#include "dext/errors.hpp"

namespace dext {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar()) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        for (long long v : r) data_.emplace_back(v);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::column(const std::vector<Scalar>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix r = *this;
    r += o;
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_)
        if (!x.is_zero()) x = -x;
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionError("matrix product shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                             " * " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o(k, j);
                if (!b.is_zero()) r(i, j) += a * b;
            }
        }
    return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
    Matrix r = *this;
    for (auto& x : r.data_)
        if (!x.is_zero()) x *= s;
    return r;
}

Matrix operator*(const Scalar& s, const Matrix& m) { return m * s; }

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
        if (data_[k] != o.data_[k]) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("add_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j)
            if (!b(i, j).is_zero()) (*this)(r0 + i, c0 + j) += b(i, j);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
}

std::vector<Scalar> Matrix::col_vector(std::size_t j) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
    }
    os << "]";
    return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
    Matrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) throw DimensionError("hstack row mismatch");
        cols += p.cols();
    }
    Matrix r(rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
        r.set_block(0, c, p);
        c += p.cols();
    }
    return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
    Matrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw DimensionError("vstack column mismatch");
        rows += p.rows();
    }
    Matrix r(rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        r.set_block(off, 0, p);
        off += p.rows();
    }
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

std::size_t rank(const Matrix& a) {
    // Fraction-free (Bareiss) elimination: every update is an exact division by
    // the previous pivot, so over Q the intermediate entries stay as small as
    // the minors of A.
    Matrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    Scalar prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        const Scalar p = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Scalar f = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j) {
                Scalar v = p * m(i, j);
                if (!f.is_zero() && !m(r, j).is_zero()) v -= f * m(r, j);
                m(i, j) = v.is_zero() ? v : v / prev;
            }
            m(i, c) = Scalar(0);
        }
        prev = p;
        ++r;
    }
    return r;
}

Rref rref(const Matrix& a) {
    Rref out{a, {}};
    Matrix& m = out.reduced;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        const Scalar inv = m(r, c).inverse();
        if (!inv.is_one())
            for (std::size_t j = c; j < cols; ++j)
                if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

Matrix kernel_basis(const Matrix& a) {
    const Rref rr = rref(a);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : rr.pivots) is_pivot[c] = true;
    Matrix k(cols, cols - rr.pivots.size());
    std::size_t out = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        k(f, out) = Scalar(1);
        for (std::size_t r = 0; r < rr.pivots.size(); ++r)
            if (!rr.reduced(r, f).is_zero()) k(rr.pivots[r], out) = -rr.reduced(r, f);
        ++out;
    }
    return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("solve: row mismatch");
    const Rref rr = rref(hstack(a, b));
    const std::size_t n = a.cols();
    Matrix x(n, b.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
        if (rr.pivots[r] >= n) return std::nullopt;  // pivot in the augmented part
        for (std::size_t j = 0; j < b.cols(); ++j) x(rr.pivots[r], j) = rr.reduced(r, n + j);
    }
    return x;
}

std::vector<std::size_t> independent_columns(const Matrix& a) { return rref(a).pivots; }

Matrix column_space_basis(const Matrix& a) { return a.select_cols(independent_columns(a)); }

Matrix left_inverse(const Matrix& a) {
    // Pick rows forming an invertible square submatrix S of A; then
    // L = S^{-1} placed on those rows is a left inverse.
    const std::vector<std::size_t> rows = independent_columns(a.transpose());
    if (rows.size() != a.cols()) throw DimensionError("left_inverse: matrix lacks full column rank");
    const Matrix s_inv = inverse(a.select_rows(rows));
    Matrix l(a.cols(), a.rows());
    for (std::size_t k = 0; k < rows.size(); ++k)
        for (std::size_t i = 0; i < a.cols(); ++i) l(i, rows[k]) = s_inv(i, k);
    return l;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse: not square");
    const std::size_t n = a.rows();
    const Rref rr = rref(hstack(a, Matrix::identity(n)));
    if (rr.pivots.size() < n || (n > 0 && rr.pivots[n - 1] != n - 1)) throw DimensionError("inverse: singular matrix");
    return rr.reduced.block(0, n, n, n);
}

Matrix complement_columns(const Matrix& a) {
    const std::size_t n = a.rows();
    const std::vector<std::size_t> piv = independent_columns(hstack(a, Matrix::identity(n)));
    std::vector<std::size_t> chosen;
    for (auto c : piv)
        if (c >= a.cols()) chosen.push_back(c - a.cols());
    Matrix e(n, chosen.size());
    for (std::size_t k = 0; k < chosen.size(); ++k) e(chosen[k], k) = Scalar(1);
    return e;
}

bool in_column_space(const Matrix& a, const Matrix& b) {
    if (b.cols() == 0) return true;
    return rank(hstack(a, b)) == rank(a);
}

}  // namespace dext
