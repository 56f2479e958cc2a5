#include <array>

#include "flc/errors.hpp"
#include "flc/families.hpp"

namespace flc {
namespace {

void check_transform(const ParamC& c, const AdaptedTransform& t) {
    if (c.family() != t.family) throw WrongFamily("transform and parameters belong to different families");
    if (t.b.size() != transform_b_count(t.family))
        throw ArityMismatch("transform needs " + std::to_string(transform_b_count(t.family)) +
                            " B coefficients, got " + std::to_string(t.b.size()));
    if ((t.a0 * t.b[0]).is_zero()) throw NotAdapted("A0*B1 = 0");
    if (c.family() == Family::Dim8 && (t.a0 + t.a1 * c.at("c34")).is_zero())
        throw NotAdapted("A0 + A1*c34 = 0");
}

Matrix basis_from_generators(const Algebra& law, const Vec& f0, const Vec& f1) {
    const std::size_t n = law.dim();
    Matrix g(n, n);
    Vec cur = f1;
    for (std::size_t r = 0; r < n; ++r) g(r, 0) = f0[r];
    for (std::size_t col = 1; col < n; ++col) {
        if (col > 1) cur = bracket(law, cur, f0);
        for (std::size_t r = 0; r < n; ++r) g(r, col) = cur[r];
    }
    return g;
}

}  // namespace

Matrix adapted_basis_matrix(const Algebra& law, const AdaptedTransform& t) {
    const std::size_t n = law.dim();
    if (n < 3 || t.b.size() + 1 > n) throw DimensionMismatch("transform does not fit the algebra");
    Vec f0(n), f1(n);
    f0[0] = t.a0;
    f0[1] = t.a1;
    for (std::size_t j = 0; j < t.b.size(); ++j) f1[j + 1] = t.b[j];
    return basis_from_generators(law, f0, f1);
}

ParamC extract_params(Family f, const Algebra& law) {
    const std::size_t n = family_dim(f);
    if (law.dim() != n)
        throw TemplateMismatch("expected a " + std::to_string(n) + "-dimensional law, got " +
                                   std::to_string(law.dim()),
                               {});
    ParamC c(f);
    const std::size_t top = n - 1;
    c.set("c00", law.gamma(0, 0, top));
    c.set("c01", law.gamma(0, 1, top));
    c.set("c11", law.gamma(1, 1, top));
    c.set("c12", law.gamma(1, 2, 4));
    c.set("c13", law.gamma(1, 2, 5));
    c.set("c14", law.gamma(1, 2, 6));
    if (f == Family::Dim7) {
        c.set("c23", law.gamma(2, 3, 6));
    } else {
        c.set("c15", law.gamma(1, 2, 7));
        c.set("c23", law.gamma(2, 3, 6));
        c.set("c24", law.gamma(2, 3, 7));
        c.set("c34", -law.gamma(3, 4, 7));
    }
    const Algebra expected = build_family(c);
    std::vector<TemplateMismatch::Entry> bad;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!(law.gamma(i, j, k) == expected.gamma(i, j, k)))
                    bad.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(k),
                                   expected.gamma(i, j, k).to_string(), law.gamma(i, j, k).to_string()});
    if (!bad.empty()) {
        const auto& first = bad.front();
        throw TemplateMismatch("law leaves the " + std::string(family_name(f)) + " shape at [e" +
                                   std::to_string(first.i) + ",e" + std::to_string(first.j) + "] e" +
                                   std::to_string(first.k) + " (" + std::to_string(bad.size()) +
                                   " entries)",
                               std::move(bad));
    }
    return c;
}

ParamC apply_adapted_direct(const ParamC& c, const AdaptedTransform& t) {
    check_transform(c, t);
    const Algebra law = build_family(c);
    const Matrix g = adapted_basis_matrix(law, t);
    Algebra moved;
    try {
        moved = change_basis(law, g);
    } catch (const SingularMatrix&) {
        throw NotAdapted("the recursion produced a singular basis");
    }
    return extract_params(c.family(), moved);
}

std::string_view formula_label(Family f, std::size_t index) {
    static constexpr std::array<std::string_view, 7> dim7{"E1", "E2", "E3", "E4", "E5", "E6", "E7"};
    static constexpr std::array<std::string_view, 10> dim8{"D2", "D3", "D4", "D5", "D6",
                                                           "D7", "D8", "D9", "D10", "D11"};
    if (f == Family::Dim7) return dim7.at(index);
    return dim8.at(index);
}

ParamC apply_adapted_closed_form(const ParamC& c, const AdaptedTransform& t) {
    check_transform(c, t);
    const GaussRat &A0 = t.a0, &A1 = t.a1, &B1 = t.b[0], &B2 = t.b[1], &B3 = t.b[2];
    const GaussRat two(2), three(3);
    const GaussRat c00 = c.at("c00"), c01 = c.at("c01"), c11 = c.at("c11"), c12 = c.at("c12"),
                   c13 = c.at("c13"), c14 = c.at("c14"), c23 = c.at("c23");
    // Shared by both families: the c14 display.
    const GaussRat c14_new =
        (A0 * B1 * B1 * c14 + B2 * (A0 * B1 * c13 + A1 * B1 * c12 * c23 + A0 * B2 * c23 - A1 * B1 * c12 * c12) -
         B3 * (two * A0 * B1 * c23 - A0 * B1 * c12)) /
        (A0.pow(5) * B1);

    if (c.family() == Family::Dim7) {
        ParamC out(Family::Dim7);
        out.set("c00", (A0 * A0 * c00 + A0 * A1 * c01 + A1 * A1 * c11) / (A0.pow(5) * B1));
        out.set("c01", (A0 * c01 + two * A1 * c11) / A0.pow(5));
        out.set("c11", B1 * c11 / A0.pow(5));
        out.set("c12", B1 * c12 / A0.pow(2));
        out.set("c13", (B1 * c13 + B2 * c12) / A0.pow(3));
        out.set("c14", c14_new);
        out.set("c23", B1 * c23 / A0.pow(2));
        return out;
    }

    const GaussRat &B4 = t.b[3], &B5 = t.b[4];
    const GaussRat c15 = c.at("c15"), c24 = c.at("c24"), c34 = c.at("c34");
    const GaussRat s = A0 + A1 * c34;
    ParamC out(Family::Dim8);
    out.set("c00", (A0 * A0 * c00 + A0 * A1 * c01 + A1 * A1 * c11) / (A0.pow(5) * B1 * s));
    out.set("c01", (A0 * c01 + two * A1 * c11) / (A0.pow(5) * s));
    out.set("c11", B1 * c11 / (A0.pow(5) * s));
    out.set("c12", B1 * c12 / A0.pow(2));
    out.set("c13", (B1 * c13 + B2 * c12) / A0.pow(3));
    out.set("c14", c14_new);
    out.set("c15",
            (A0 * B1 * B1 * c15 + (A0 * B1 * B2 + A1 * B1 * B2) * c14 +
             (A0 * B1 * B3 - two * A1 * B1 * B2 * c12 + two * A1 * B1 * B2 * c23 + A1 * B1 * B3 * c34) * c13 +
             (A0 * B1 * B4 + A1 * B1 * B2 * c24 - A1 * B1 * B3 * c12 + two * A1 * B1 * B3 * c23 +
              A1 * B1 * B4 * c34 - A1 * B2 * B2 * c23) *
                 c12 +
             (A0 * B2 * B3 - three * A0 * B1 * B4 - A1 * B1 * B4 * c34) * c23 +
             (A0 * B2 * B2 - two * A0 * B1 * B3) * c24 +
             (two * A0 * B2 * B4 - A0 * B3 * B3 - two * A0 * B1 * B5) * c34) /
                (A0.pow(5) * B1 * s));
    out.set("c23", B1 * c23 / A0.pow(2));
    out.set("c24", (A0.pow(3) * B1 * B1 * c24 + (A0.pow(3) * B1 * B2 - A0 * A0 * A1 * B1 * B1 * c12) * c23 +
                    (two * A0.pow(3) * B1 * B3 - A0.pow(3) * B2 * B2 - two * A0 * A0 * A1 * B1 * B2 * c12 -
                     A0 * A0 * A1 * B1 * B1 * c13) *
                        c34) /
                       (A0.pow(5) * s));
    out.set("c34", B1 * c34 / s);
    return out;
}

// ------------------------------------------------------ elementary transforms

ElementaryTransform ElementaryTransform::tau(GaussRat a, GaussRat b, GaussRat c) {
    ElementaryTransform t;
    t.kind = Kind::Tau;
    t.a = std::move(a);
    t.b = std::move(b);
    t.c = std::move(c);
    return t;
}

ElementaryTransform ElementaryTransform::sigma(GaussRat a, int k) {
    ElementaryTransform t;
    t.kind = Kind::Sigma;
    t.a = std::move(a);
    t.k = k;
    return t;
}

ElementaryTransform ElementaryTransform::phi(GaussRat c, int k) {
    ElementaryTransform t;
    t.kind = Kind::Phi;
    t.c = std::move(c);
    t.k = k;
    return t;
}

ComposedTransform elementary_to_adapted(const Algebra& law, Family f,
                                        const std::vector<ElementaryTransform>& seq) {
    const std::size_t n = law.dim();
    Algebra current = law;
    Matrix composite = Matrix::identity(n);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        Vec f0 = Vec::basis(n, 0), f1 = Vec::basis(n, 1);
        switch (it->kind) {
            case ElementaryTransform::Kind::Tau:
                if ((it->a * it->c).is_zero()) throw NotAdapted("tau needs a*c != 0");
                f0[0] = it->a;
                f0[1] = it->b;
                f1[1] = it->c;
                break;
            case ElementaryTransform::Kind::Sigma:
            case ElementaryTransform::Kind::Phi: {
                if (it->k < 2 || static_cast<std::size_t>(it->k) >= n)
                    throw NotAdapted("elementary index out of range: " + std::to_string(it->k));
                const auto k = static_cast<std::size_t>(it->k);
                if (it->kind == ElementaryTransform::Kind::Sigma) f0[k] += it->a;
                else f1[k] += it->c;
                break;
            }
        }
        const Matrix g = basis_from_generators(current, f0, f1);
        try {
            current = change_basis(current, g);
        } catch (const SingularMatrix&) {
            throw NotAdapted("elementary step produced a singular basis");
        }
        composite = composite * g;
    }

    const GaussRat& a0 = composite(0, 0);
    const GaussRat& a1 = composite(1, 0);
    const GaussRat& b1 = composite(1, 1);
    GaussRat shift = a0;
    if (f == Family::Dim8 && n == 8) shift = a0 - a1 * law.gamma(3, 4, 7);
    if ((a0 * b1 * shift).is_zero()) throw NotAdapted("composite fails A0*B1*(A0 + A1*b) != 0");

    ComposedTransform out{composite, current, std::nullopt};
    const std::size_t nb = transform_b_count(f);
    bool reduced = composite(0, 1).is_zero();
    for (std::size_t r = 2; r < n && reduced; ++r) reduced = composite(r, 0).is_zero();
    for (std::size_t r = nb + 1; r < n && reduced; ++r) reduced = composite(r, 1).is_zero();
    if (reduced) {
        AdaptedTransform t;
        t.family = f;
        t.a0 = a0;
        t.a1 = a1;
        for (std::size_t j = 1; j <= nb; ++j) t.b.push_back(composite(j, 1));
        out.reduced = std::move(t);
    }
    return out;
}

}  // namespace flc
