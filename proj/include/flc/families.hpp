#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flc/algebra.hpp"
#include "flc/matrix.hpp"
#include "flc/multi_poly.hpp"

namespace flc {

/// The two classified families: 7- and 8-dimensional filiform Leibniz
/// algebras of the third type.
enum class Family { Dim7, Dim8 };

[[nodiscard]] std::string_view family_name(Family f) noexcept;  // "TLb7" / "TLb8"
/// Accepts "TLb7", "tlb7", "Dim7" and the 8-dimensional analogues.
[[nodiscard]] Family parse_family(std::string_view text);
[[nodiscard]] std::size_t family_dim(Family f) noexcept;
/// Structure-parameter names in canonical order (c00, c01, ...).
[[nodiscard]] const std::vector<std::string>& parameter_names(Family f);
/// Shared variable list over parameter_names(f), for polynomial work.
[[nodiscard]] const MultiPoly::Variables& parameter_variables(Family f);
/// Number of B coefficients in the reduced transform (3 or 5).
[[nodiscard]] std::size_t transform_b_count(Family f) noexcept;

/// Structure-parameter vector C of one family member.
class ParamC {
public:
    explicit ParamC(Family f);
    ParamC(Family f, std::vector<GaussRat> values);

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
    [[nodiscard]] const std::vector<GaussRat>& values() const noexcept { return v_; }
    const GaussRat& operator[](std::size_t i) const { return v_.at(i); }
    GaussRat& operator[](std::size_t i) { return v_.at(i); }
    /// Access by parameter name; throws MissingVariable for unknown names.
    [[nodiscard]] const GaussRat& at(std::string_view name) const;
    void set(std::string_view name, GaussRat value);

    /// "L(c00,c01,...)" with textual Gaussian rationals.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const ParamC&, const ParamC&) = default;

private:
    Family family_;
    std::vector<GaussRat> v_;
};

/// Reduced adapted base change:
///   f(e0) = A0 e0 + A1 e1,  f(e1) = B1 e1 + B2 e2 + ...,
///   f(e_i) = [f(e_{i-1}), f(e0)].
struct AdaptedTransform {
    Family family = Family::Dim7;
    GaussRat a0{1};
    GaussRat a1{0};
    std::vector<GaussRat> b;  // B1, B2, ...

    static AdaptedTransform identity(Family f);
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const AdaptedTransform&, const AdaptedTransform&) = default;
};

// ------------------------------------------------------------- constructors

/// Graded filiform Lie algebra on e_0..e_{n-1}: [e_i, e_0] = e_{i+1} and the
/// antisymmetric partner. Throws InvalidDimension for n < 3.
Algebra build_mu(int n);

Algebra build_tlb7(const ParamC& c);
Algebra build_tlb8(const ParamC& c);
/// Dispatches on c.family().
Algebra build_family(const ParamC& c);

/// For the 8-dimensional family the table satisfies the Leibniz identity
/// exactly when c34 * (2 c12 + c23) = 0; the 7-dimensional table always does.
[[nodiscard]] GaussRat admissibility_defect(const ParamC& c);
[[nodiscard]] bool is_admissible(const ParamC& c);

// ------------------------------------------------------------------ cocycles

struct DeltaPair {
    int k, r;
    friend bool operator==(const DeltaPair&, const DeltaPair&) = default;
};

/// Admissible (k, r) pairs for dimension n.
std::vector<DeltaPair> delta_pairs(int n);

/// binomial(m, t), zero when t < 0 or t > m.
long long binomial(int m, int t);

/// The bilinear map Psi_{k,r} on e_0..e_{n-1}; throws PairNotInDelta.
Algebra cocycle_psi(int n, int k, int r);

enum class CocycleMode { Lie, Leibniz };

struct BasisTriple {
    std::size_t i, j, k;
    friend bool operator==(const BasisTriple&, const BasisTriple&) = default;
};

/// Basis triples where the quadratic condition of the given mode fails,
/// in lexicographic order.
///   Lie:     P(P(x,y),z) + P(P(y,z),x) + P(P(z,x),y)
///   Leibniz: P(x,P(y,z)) + P(P(x,z),y) - P(P(x,y),z)
std::vector<BasisTriple> check_cocycle_square(const Algebra& psi, CocycleMode mode);

/// Entrywise sum of two laws of equal dimension.
Algebra add_laws(const Algebra& a, const Algebra& b);

// ---------------------------------------------------------------- the action

/// Basis matrix of the adapted transform relative to `law`: column i holds
/// f(e_i) in the old basis.
Matrix adapted_basis_matrix(const Algebra& law, const AdaptedTransform& t);

/// Reads C off a structure tensor that must equal the family table exactly.
/// Throws TemplateMismatch listing every deviating entry.
ParamC extract_params(Family f, const Algebra& law);

/// Ground-truth action: builds the new basis by bracket recursion, changes
/// basis, checks the family template and reads off C'.
/// Throws NotAdapted when A0*B1 (and A0 + A1*c34 for 8 dimensions) vanishes.
ParamC apply_adapted_direct(const ParamC& c, const AdaptedTransform& t);

/// The published closed-form transformation formulas, evaluated verbatim.
ParamC apply_adapted_closed_form(const ParamC& c, const AdaptedTransform& t);

/// Label of the published formula for parameter `index` (e.g. "E6", "D8").
std::string_view formula_label(Family f, std::size_t index);

// -------------------------------------------------- elementary transforms

struct ElementaryTransform {
    enum class Kind { Tau, Sigma, Phi };
    Kind kind = Kind::Tau;
    GaussRat a{1}, b{0}, c{1};
    int k = 0;

    /// e0 -> a e0 + b e1, e1 -> c e1.
    static ElementaryTransform tau(GaussRat a, GaussRat b, GaussRat c);
    /// e0 -> e0 + a e_k.
    static ElementaryTransform sigma(GaussRat a, int k);
    /// e1 -> e1 + c e_k.
    static ElementaryTransform phi(GaussRat c, int k);
};

struct ComposedTransform {
    Matrix basis;  // composite new basis in the original coordinates
    Algebra result;
    /// Present when the composite has the reduced shape.
    std::optional<AdaptedTransform> reduced;
};

/// Applies `seq` right to left (the last element acts first), each step
/// building its basis by bracket recursion in the current law.
/// Throws NotAdapted if a step or the composite is degenerate.
ComposedTransform elementary_to_adapted(const Algebra& law, Family f,
                                        const std::vector<ElementaryTransform>& seq);

// ------------------------------------------------------ symbolic constraints

enum class RawTableReading {
    Corrected,  // [e2,e4] carries b24 on e7 in the 8-dimensional table
    AsPrinted,  // [e2,e4] carries b24 on e6
};

struct DerivedConstraints {
    MultiPoly::Variables variables;
    /// Every nonzero coordinate of the expanded Leibniz identity, monic and
    /// deduplicated.
    std::vector<MultiPoly> raw;
    /// Radical-preserving simplification: the linear relations in reduced
    /// echelon form, followed by the nonlinear leftovers reduced modulo them.
    std::vector<MultiPoly> reduced;
};

/// The pre-unification table with symbolic a_ij, b_ij entries.
struct SymbolicTable {
    MultiPoly::Variables variables;
    BasicAlgebra<MultiPoly> law;
};
SymbolicTable raw_table(Family f, RawTableReading reading = RawTableReading::Corrected);

/// Numeric instance of a symbolic table; values[i] binds variable i.
Algebra instantiate(const BasicAlgebra<MultiPoly>& law, const std::vector<GaussRat>& values);

/// Builds the pre-unification table with symbolic a_ij, b_ij, expands the
/// Leibniz identity on all basis triples and collects the constraints.
DerivedConstraints derive_constraints(Family f, RawTableReading reading = RawTableReading::Corrected);

/// The relations stated for the unified parameterization, over the same
/// variables as derive_constraints(f).
std::vector<MultiPoly> stated_relations(Family f);

/// Whether `p` lies in the span of { m * g : g in gens, m monomial,
/// deg(m * g) <= max_degree }.
bool in_truncated_ideal(const MultiPoly& p, const std::vector<MultiPoly>& gens, unsigned max_degree);

/// Number of linearly independent polynomials of degree <= 1 in `set`.
std::size_t linear_relation_rank(const std::vector<MultiPoly>& set);

}  // namespace flc
