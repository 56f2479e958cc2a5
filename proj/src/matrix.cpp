#include "flc/matrix.hpp"

#include <utility>

#include "flc/errors.hpp"

namespace flc {
namespace {

using Rows = std::vector<std::vector<GaussRat>>;

// Fraction-free forward elimination. Returns the pivot columns; rows beyond
// the pivot count are zero afterwards. `sign` tracks row swaps.
std::vector<std::size_t> bareiss(Rows& rows, std::size_t ncols, int* sign = nullptr) {
    std::vector<std::size_t> pivots;
    GaussRat prev(1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col].is_zero()) ++p;
        if (p == rows.size()) continue;
        if (p != r) {
            std::swap(rows[p], rows[r]);
            if (sign) *sign = -*sign;
        }
        const GaussRat& piv = rows[r][col];
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            const GaussRat f = rows[i][col];
            for (std::size_t j = col + 1; j < ncols; ++j) {
                GaussRat v = piv * rows[i][j];
                if (!f.is_zero()) v -= f * rows[r][j];
                rows[i][j] = prev.is_one() ? std::move(v) : v / prev;
            }
            rows[i][col] = GaussRat();
        }
        prev = piv;
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRat(1);
    return m;
}

bool Matrix::is_lower_triangular() const {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) return false;
    return true;
}

GaussRat Matrix::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of a non-square matrix");
    if (rows_ == 0) return GaussRat(1);
    Rows rows(rows_, std::vector<GaussRat>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) rows[r][c] = (*this)(r, c);
    int sign = 1;
    const auto pivots = bareiss(rows, cols_, &sign);
    if (pivots.size() < rows_) return GaussRat();
    // After Bareiss the last pivot equals the determinant up to row swaps.
    const GaussRat d = rows[rows_ - 1][cols_ - 1];
    return sign < 0 ? -d : d;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Rows aug(n, std::vector<GaussRat>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug[r][c] = (*this)(r, c);
        aug[r][n + r] = GaussRat(1);
    }
    const auto pivots = bareiss(aug, 2 * n);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw SingularMatrix();
    // Back substitution on the upper-triangular left block.
    Matrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = n; r-- > 0;) {
            GaussRat acc = aug[r][n + c];
            for (std::size_t k = r + 1; k < n; ++k)
                if (!aug[r][k].is_zero()) acc -= aug[r][k] * inv(k, c);
            inv(r, c) = acc / aug[r][r];
        }
    }
    return inv;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const GaussRat& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
        }
    return out;
}

std::size_t rank(std::vector<std::vector<GaussRat>> rows) {
    if (rows.empty()) return 0;
    return bareiss(rows, rows.front().size()).size();
}

std::vector<std::vector<GaussRat>> row_basis(std::vector<std::vector<GaussRat>> rows) {
    if (rows.empty()) return rows;
    const auto pivots = bareiss(rows, rows.front().size());
    rows.resize(pivots.size());
    return rows;
}

}  // namespace flc
