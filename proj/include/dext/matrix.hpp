#pragma once
// Dense row-major matrices over the exact Scalar field, with the handful of
// elimination routines every other module relies on: rank (fraction-free
// Bareiss), reduced row echelon form, kernels, linear solves, one-sided
// inverses and complements.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "dext/scalar.hpp"

namespace dext {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<long long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    // n x 1 column vector.
    static Matrix column(const std::vector<Scalar>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Scalar& s) const;
    Matrix& operator+=(const Matrix& o);
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    bool is_zero() const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    void add_block(std::size_t r0, std::size_t c0, const Matrix& b);
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    std::vector<Scalar> col_vector(std::size_t j) const;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Scalar& s, const Matrix& m);

// [A | B], requires equal row counts (either may have zero columns).
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows);
// [A ; B], requires equal column counts.
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols);
Matrix direct_sum(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& a);

struct Rref {
    Matrix reduced;                    // same shape as the input
    std::vector<std::size_t> pivots;   // pivot column for each nonzero row
};
Rref rref(const Matrix& a);

// Columns form a basis of {x : A x = 0}; cols = A.cols() - rank(A).
Matrix kernel_basis(const Matrix& a);
// Some X with A X = B, or nullopt if the system is inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// Indices of a maximal set of linearly independent columns (greedy, left to right).
std::vector<std::size_t> independent_columns(const Matrix& a);
// Basis of the column space drawn from A's own columns.
Matrix column_space_basis(const Matrix& a);
// L with L A = I; A must have full column rank.
Matrix left_inverse(const Matrix& a);
// Inverse of a square invertible matrix.
Matrix inverse(const Matrix& a);
// Standard basis vectors e_j (as columns) completing col(A) to the whole space.
Matrix complement_columns(const Matrix& a);
// True if every column of B lies in the column space of A.
bool in_column_space(const Matrix& a, const Matrix& b);

}  // namespace dext
