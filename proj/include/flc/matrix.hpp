#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flc/gauss_rat.hpp"

namespace flc {

/// Dense row-major matrix over Q(i).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    GaussRat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const GaussRat& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    [[nodiscard]] bool is_lower_triangular() const;
    /// Fraction-free (Bareiss) determinant; requires a square matrix.
    [[nodiscard]] GaussRat determinant() const;
    /// Exact inverse by fraction-free elimination; throws SingularMatrix.
    [[nodiscard]] Matrix inverse() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussRat> a_;
};

/// Rank of the row set by fraction-free elimination.
std::size_t rank(std::vector<std::vector<GaussRat>> rows);

/// Linearly independent rows (in echelon form) spanning the same space.
std::vector<std::vector<GaussRat>> row_basis(std::vector<std::vector<GaussRat>> rows);

}  // namespace flc
