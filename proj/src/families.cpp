#include "flc/families.hpp"

#include <algorithm>
#include <cctype>

#include "flc/errors.hpp"

namespace flc {

std::string_view family_name(Family f) noexcept { return f == Family::Dim7 ? "TLb7" : "TLb8"; }

Family parse_family(std::string_view text) {
    std::string lower;
    for (char ch : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "tlb7" || lower == "dim7" || lower == "7") return Family::Dim7;
    if (lower == "tlb8" || lower == "dim8" || lower == "8") return Family::Dim8;
    throw ParseError("unknown family '" + std::string(text) + "'");
}

std::size_t family_dim(Family f) noexcept { return f == Family::Dim7 ? 7 : 8; }

std::size_t transform_b_count(Family f) noexcept { return f == Family::Dim7 ? 3 : 5; }

const std::vector<std::string>& parameter_names(Family f) {
    static const std::vector<std::string> dim7{"c00", "c01", "c11", "c12", "c13", "c14", "c23"};
    static const std::vector<std::string> dim8{"c00", "c01", "c11", "c12", "c13",
                                               "c14", "c15", "c23", "c24", "c34"};
    return f == Family::Dim7 ? dim7 : dim8;
}

const MultiPoly::Variables& parameter_variables(Family f) {
    static const MultiPoly::Variables dim7 = MultiPoly::make_variables(parameter_names(Family::Dim7));
    static const MultiPoly::Variables dim8 = MultiPoly::make_variables(parameter_names(Family::Dim8));
    return f == Family::Dim7 ? dim7 : dim8;
}

// -------------------------------------------------------------------- ParamC

ParamC::ParamC(Family f) : family_(f), v_(parameter_names(f).size()) {}

ParamC::ParamC(Family f, std::vector<GaussRat> values) : family_(f), v_(std::move(values)) {
    if (v_.size() != parameter_names(f).size())
        throw ArityMismatch(std::string(family_name(f)) + " takes " +
                            std::to_string(parameter_names(f).size()) + " parameters, got " +
                            std::to_string(v_.size()));
}

namespace {
std::size_t name_index(Family f, std::string_view name) {
    const auto& names = parameter_names(f);
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw MissingVariable("no parameter '" + std::string(name) + "' in " + std::string(family_name(f)));
    return static_cast<std::size_t>(it - names.begin());
}
}  // namespace

const GaussRat& ParamC::at(std::string_view name) const { return v_[name_index(family_, name)]; }

void ParamC::set(std::string_view name, GaussRat value) { v_[name_index(family_, name)] = std::move(value); }

std::string ParamC::to_string() const {
    std::string out = "L(";
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (i) out += ',';
        out += v_[i].to_string();
    }
    return out + ')';
}

AdaptedTransform AdaptedTransform::identity(Family f) {
    AdaptedTransform t;
    t.family = f;
    t.b.assign(transform_b_count(f), GaussRat());
    t.b[0] = GaussRat(1);
    return t;
}

std::string AdaptedTransform::to_string() const {
    std::string out = "A0=" + a0.to_string() + " A1=" + a1.to_string();
    for (std::size_t i = 0; i < b.size(); ++i) out += " B" + std::to_string(i + 1) + "=" + b[i].to_string();
    return out;
}

// -------------------------------------------------------------- constructors

Algebra build_mu(int n) {
    if (n < 3) throw InvalidDimension("mu_n needs n >= 3, got " + std::to_string(n));
    const auto un = static_cast<std::size_t>(n);
    Algebra a(un);
    for (std::size_t i = 1; i + 1 < un; ++i) a.add_antisymmetric(i, 0, i + 1, GaussRat(1));
    return a;
}

namespace {

// Shared filiform spine: [e_i, e0] = e_{i+1} for 1 <= i <= n-2 and
// [e0, e_i] = -e_{i+1} for 2 <= i <= n-2, plus [e0, e1] = -e2.
Algebra spine(std::size_t n) {
    Algebra a(n);
    for (std::size_t i = 1; i + 1 < n; ++i) a.set(i, 0, i + 1, GaussRat(1));
    for (std::size_t i = 1; i + 1 < n; ++i) a.set(0, i, i + 1, GaussRat(-1));
    return a;
}

}  // namespace

Algebra build_tlb7(const ParamC& c) {
    if (c.family() != Family::Dim7) throw WrongFamily("build_tlb7 needs TLb7 parameters");
    const GaussRat &c00 = c[0], &c01 = c[1], &c11 = c[2], &c12 = c[3], &c13 = c[4], &c14 = c[5],
                   &c23 = c[6];
    Algebra a = spine(7);
    a.add(0, 0, 6, c00);
    a.add(0, 1, 6, c01);
    a.add(1, 1, 6, c11);
    a.add_antisymmetric(1, 2, 4, c12);
    a.add_antisymmetric(1, 2, 5, c13);
    a.add_antisymmetric(1, 2, 6, c14);
    a.add_antisymmetric(1, 3, 5, c12);
    a.add_antisymmetric(1, 3, 6, c13);
    a.add_antisymmetric(1, 4, 6, c12 - c23);
    a.add_antisymmetric(2, 3, 6, c23);
    return a;
}

Algebra build_tlb8(const ParamC& c) {
    if (c.family() != Family::Dim8) throw WrongFamily("build_tlb8 needs TLb8 parameters");
    const GaussRat &c00 = c[0], &c01 = c[1], &c11 = c[2], &c12 = c[3], &c13 = c[4], &c14 = c[5],
                   &c15 = c[6], &c23 = c[7], &c24 = c[8], &c34 = c[9];
    Algebra a = spine(8);
    a.add(0, 0, 7, c00);
    a.add(0, 1, 7, c01);
    a.add(1, 1, 7, c11);
    a.add_antisymmetric(1, 2, 4, c12);
    a.add_antisymmetric(1, 2, 5, c13);
    a.add_antisymmetric(1, 2, 6, c14);
    a.add_antisymmetric(1, 2, 7, c15);
    a.add_antisymmetric(1, 3, 5, c12);
    a.add_antisymmetric(1, 3, 6, c13);
    a.add_antisymmetric(1, 3, 7, c14);
    a.add_antisymmetric(1, 4, 6, c12 - c23);
    a.add_antisymmetric(1, 4, 7, c13 - c24);
    a.add_antisymmetric(1, 5, 7, c12 - GaussRat(2) * c23);
    a.add_antisymmetric(2, 3, 6, c23);
    a.add_antisymmetric(2, 3, 7, c24);
    a.add_antisymmetric(2, 4, 7, c23);
    // [e_i, e_{7-i}] = (-1)^i c34 e7
    for (std::size_t i = 1; i <= 3; ++i) a.add_antisymmetric(i, 7 - i, 7, i % 2 ? -c34 : c34);
    return a;
}

Algebra build_family(const ParamC& c) {
    return c.family() == Family::Dim7 ? build_tlb7(c) : build_tlb8(c);
}

GaussRat admissibility_defect(const ParamC& c) {
    if (c.family() == Family::Dim7) return GaussRat();
    return c.at("c34") * (GaussRat(2) * c.at("c12") + c.at("c23"));
}

bool is_admissible(const ParamC& c) { return admissibility_defect(c).is_zero(); }

// ------------------------------------------------------------------ cocycles

std::vector<DeltaPair> delta_pairs(int n) {
    std::vector<DeltaPair> out;
    for (int k = 1; k <= (n - 2) / 2; ++k)
        for (int r = 2 * k + 2; r <= n - 1; ++r) out.push_back({k, r});
    if (n % 2 == 0 && n >= 4) {
        const DeltaPair extra{(n - 2) / 2, n - 1};
        if (std::find(out.begin(), out.end(), extra) == out.end()) out.push_back(extra);
    }
    return out;
}

long long binomial(int m, int t) {
    if (t < 0 || m < 0 || t > m) return 0;
    long long r = 1;
    for (int i = 1; i <= t; ++i) r = r * (m - t + i) / i;
    return r;
}

Algebra cocycle_psi(int n, int k, int r) {
    if (n < 3) throw InvalidDimension("cocycles need n >= 3");
    const auto pairs = delta_pairs(n);
    if (std::find(pairs.begin(), pairs.end(), DeltaPair{k, r}) == pairs.end())
        throw PairNotInDelta("(" + std::to_string(k) + ", " + std::to_string(r) +
                             ") is not admissible for n = " + std::to_string(n));
    Algebra psi(static_cast<std::size_t>(n));
    for (int i = 1; i <= k; ++i)
        for (int j = k + 1; j <= n - 1; ++j) {
            const int target = i + j + r - 2 * k - 1;
            if (target < 0 || target >= n) continue;
            const long long coeff = ((k - i) % 2 ? -1 : 1) * binomial(j - k - 1, k - i);
            if (coeff == 0) continue;
            psi.add_antisymmetric(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                  static_cast<std::size_t>(target), GaussRat(coeff));
        }
    return psi;
}

std::vector<BasisTriple> check_cocycle_square(const Algebra& psi, CocycleMode mode) {
    const std::size_t n = psi.dim();
    std::vector<BasisTriple> out;
    auto e = [n](std::size_t i) { return Vec::basis(n, i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec v(n);
                if (mode == CocycleMode::Lie) {
                    v = bracket(psi, psi.bracket_basis(i, j), e(k)) +
                        bracket(psi, psi.bracket_basis(j, k), e(i)) +
                        bracket(psi, psi.bracket_basis(k, i), e(j));
                } else {
                    v = bracket(psi, e(i), psi.bracket_basis(j, k)) +
                        bracket(psi, psi.bracket_basis(i, k), e(j)) -
                        bracket(psi, psi.bracket_basis(i, j), e(k));
                }
                if (!v.is_zero()) out.push_back({i, j, k});
            }
    return out;
}

Algebra add_laws(const Algebra& a, const Algebra& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("laws of different dimension");
    Algebra out = a;
    for (const auto& e : nonzero_entries(b)) out.add(e.i, e.j, e.k, e.value);
    return out;
}

}  // namespace flc
