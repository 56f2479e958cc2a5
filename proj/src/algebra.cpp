#include "flc/algebra.hpp"

#include <utility>

namespace flc {

std::vector<GammaEntry> nonzero_entries(const Algebra& a) {
    std::vector<GammaEntry> out;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!a.gamma(i, j, k).is_zero()) out.push_back({i, j, k, a.gamma(i, j, k)});
    return out;
}

std::vector<std::size_t> lower_central_dims(const Algebra& a) {
    const std::size_t n = a.dim();
    std::vector<std::size_t> dims{n};
    std::vector<std::vector<GaussRat>> current;
    for (std::size_t i = 0; i < n; ++i) current.push_back(Vec::basis(n, i).coords());
    for (;;) {
        std::vector<std::vector<GaussRat>> spanning;
        for (const auto& v : current)
            for (std::size_t j = 0; j < n; ++j) {
                Vec w = bracket(a, Vec(v), Vec::basis(n, j));
                if (!w.is_zero()) spanning.push_back(w.coords());
            }
        current = row_basis(std::move(spanning));
        if (current.size() == dims.back()) break;
        dims.push_back(current.size());
        if (current.empty()) break;
    }
    return dims;
}

bool is_filiform(const Algebra& a) {
    const std::size_t n = a.dim();
    const auto dims = lower_central_dims(a);
    if (dims.size() != n || n < 2) return false;
    for (std::size_t i = 2; i <= n; ++i)
        if (dims[i - 1] != n - i) return false;
    return true;
}

Algebra change_basis(const Algebra& a, const Matrix& g) {
    const std::size_t n = a.dim();
    if (g.rows() != n || g.cols() != n) throw DimensionMismatch("basis matrix shape mismatch");

    // Sparse rows of g: row r lists the columns c with g(r, c) != 0.
    std::vector<std::vector<std::pair<std::size_t, GaussRat>>> row(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!g(r, c).is_zero()) row[r].emplace_back(c, g(r, c));

    // w[i][j] = bracket(g e_i, g e_j) in old coordinates.
    std::vector<Vec> w(n * n, Vec(n));
    for (const auto& e : nonzero_entries(a))
        for (const auto& [i, gi] : row[e.i]) {
            const GaussRat s = gi * e.value;
            for (const auto& [j, gj] : row[e.j]) w[i * n + j][e.k] += s * gj;
        }

    Algebra out(n);
    if (g.is_lower_triangular()) {
        std::vector<GaussRat> inv_diag(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (g(r, r).is_zero()) throw SingularMatrix();
            inv_diag[r] = g(r, r).inverse();
        }
        for (std::size_t p = 0; p < n * n; ++p) {
            const Vec& rhs = w[p];
            if (rhs.is_zero()) continue;
            std::vector<GaussRat> x(n);
            for (std::size_t r = 0; r < n; ++r) {
                GaussRat acc = rhs[r];
                for (const auto& [c, v] : row[r]) {
                    if (c >= r) break;
                    if (!x[c].is_zero()) acc -= v * x[c];
                }
                if (!acc.is_zero()) x[r] = acc * inv_diag[r];
            }
            for (std::size_t k = 0; k < n; ++k)
                if (!x[k].is_zero()) out.set(p / n, p % n, k, std::move(x[k]));
        }
        return out;
    }

    const Matrix inv = g.inverse();
    for (std::size_t p = 0; p < n * n; ++p) {
        const Vec& rhs = w[p];
        if (rhs.is_zero()) continue;
        for (std::size_t r = 0; r < n; ++r) {
            GaussRat acc;
            for (std::size_t c = 0; c < n; ++c)
                if (!inv(r, c).is_zero() && !rhs[c].is_zero()) acc += inv(r, c) * rhs[c];
            if (!acc.is_zero()) out.set(p / n, p % n, r, std::move(acc));
        }
    }
    return out;
}

}  // namespace flc
