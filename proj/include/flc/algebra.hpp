#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flc/errors.hpp"
#include "flc/gauss_rat.hpp"
#include "flc/matrix.hpp"

namespace flc {

/// Coordinate vector over the fixed basis e_0 ... e_{n-1}.
template <class Scalar>
class BasicVec {
public:
    BasicVec() = default;
    explicit BasicVec(std::size_t dim) : c_(dim) {}
    explicit BasicVec(std::vector<Scalar> coords) : c_(std::move(coords)) {}
    static BasicVec basis(std::size_t dim, std::size_t i) {
        BasicVec v(dim);
        v.c_.at(i) = Scalar(1);
        return v;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return c_.size(); }
    Scalar& operator[](std::size_t i) { return c_[i]; }
    const Scalar& operator[](std::size_t i) const { return c_[i]; }
    [[nodiscard]] const std::vector<Scalar>& coords() const noexcept { return c_; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    BasicVec& operator+=(const BasicVec& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    BasicVec& operator-=(const BasicVec& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend BasicVec operator+(BasicVec a, const BasicVec& b) { return a += b; }
    friend BasicVec operator-(BasicVec a, const BasicVec& b) { return a -= b; }
    friend BasicVec operator*(const Scalar& s, BasicVec v) {
        for (auto& x : v.c_) x = s * x;
        return v;
    }
    friend bool operator==(const BasicVec&, const BasicVec&) = default;

private:
    void check(const BasicVec& o) const {
        if (o.c_.size() != c_.size()) throw DimensionMismatch("vector dimensions differ");
    }
    std::vector<Scalar> c_;
};

/// Structure-constant tensor: bracket(e_i, e_j) = sum_k gamma(i, j, k) e_k.
/// `Scalar` is a commutative ring type (GaussRat, or MultiPoly for symbolic
/// tables).
template <class Scalar>
class BasicAlgebra {
public:
    BasicAlgebra() = default;
    explicit BasicAlgebra(std::size_t dim) : n_(dim), g_(dim * dim * dim) {
        if (dim == 0) throw InvalidDimension("algebra dimension must be positive");
    }

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    const Scalar& gamma(std::size_t i, std::size_t j, std::size_t k) const {
        return g_[idx(i, j, k)];
    }
    void set(std::size_t i, std::size_t j, std::size_t k, Scalar v) { g_[idx(i, j, k)] = std::move(v); }
    void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) { g_[idx(i, j, k)] += v; }
    /// Adds v to gamma(i, j, k) and -v to gamma(j, i, k).
    void add_antisymmetric(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
        g_[idx(i, j, k)] += v;
        g_[idx(j, i, k)] -= v;
    }

    [[nodiscard]] BasicVec<Scalar> bracket_basis(std::size_t i, std::size_t j) const {
        BasicVec<Scalar> out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = gamma(i, j, k);
        return out;
    }

    friend bool operator==(const BasicAlgebra&, const BasicAlgebra&) = default;

private:
    [[nodiscard]] std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const {
        if (i >= n_ || j >= n_ || k >= n_) throw DimensionMismatch("basis index out of range");
        return (i * n_ + j) * n_ + k;
    }
    std::size_t n_ = 0;
    std::vector<Scalar> g_;
};

using Vec = BasicVec<GaussRat>;
using Algebra = BasicAlgebra<GaussRat>;

/// Bilinear extension of the structure constants.
template <class Scalar>
BasicVec<Scalar> bracket(const BasicAlgebra<Scalar>& a, const BasicVec<Scalar>& x,
                         const BasicVec<Scalar>& y) {
    const std::size_t n = a.dim();
    if (x.dim() != n || y.dim() != n) throw DimensionMismatch("vector and algebra dimensions differ");
    BasicVec<Scalar> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            const Scalar xy = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar& g = a.gamma(i, j, k);
                if (!g.is_zero()) out[k] += xy * g;
            }
        }
    }
    return out;
}

template <class Scalar>
struct LeibnizViolation {
    std::size_t i, j, k;
    BasicVec<Scalar> defect;
};

/// Every basis triple where [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]
/// is nonzero (right Leibniz identity).
template <class Scalar>
std::vector<LeibnizViolation<Scalar>> leibniz_violations(const BasicAlgebra<Scalar>& a) {
    const std::size_t n = a.dim();
    std::vector<LeibnizViolation<Scalar>> out;
    // Left action [e_i, v] and right action [v, e_k] applied to a bracket result.
    auto left = [&](std::size_t i, const BasicVec<Scalar>& v, BasicVec<Scalar>& acc, bool negate) {
        for (std::size_t l = 0; l < n; ++l) {
            if (v[l].is_zero()) continue;
            for (std::size_t m = 0; m < n; ++m) {
                const Scalar& g = a.gamma(i, l, m);
                if (g.is_zero()) continue;
                if (negate) acc[m] -= v[l] * g;
                else acc[m] += v[l] * g;
            }
        }
    };
    auto right = [&](const BasicVec<Scalar>& v, std::size_t k, BasicVec<Scalar>& acc, bool negate) {
        for (std::size_t l = 0; l < n; ++l) {
            if (v[l].is_zero()) continue;
            for (std::size_t m = 0; m < n; ++m) {
                const Scalar& g = a.gamma(l, k, m);
                if (g.is_zero()) continue;
                if (negate) acc[m] -= v[l] * g;
                else acc[m] += v[l] * g;
            }
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                BasicVec<Scalar> d(n);
                left(i, a.bracket_basis(j, k), d, false);
                right(a.bracket_basis(i, j), k, d, true);
                right(a.bracket_basis(i, k), j, d, false);
                if (!d.is_zero()) out.push_back({i, j, k, std::move(d)});
            }
    return out;
}

/// dim L^1, dim L^2, ... with L^{k+1} = [L^k, L]; stops once the dimension
/// stops decreasing.
std::vector<std::size_t> lower_central_dims(const Algebra& a);

/// True iff dim L^i = n - i for 2 <= i <= n.
bool is_filiform(const Algebra& a);

/// Algebra with law g^{-1} bracket(g x, g y). Column j of g holds the image
/// of e_j. Throws SingularMatrix if g is not invertible.
Algebra change_basis(const Algebra& a, const Matrix& g);

/// Nonzero structure constants as (i, j, k, value), in index order.
struct GammaEntry {
    std::size_t i, j, k;
    GaussRat value;
};
std::vector<GammaEntry> nonzero_entries(const Algebra& a);

}  // namespace flc
