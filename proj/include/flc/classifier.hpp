#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flc/families.hpp"
#include "flc/rational_function.hpp"

namespace flc {

/// chi1 = 4 c00 c11 - c01^2 (both families); chi2 = 2 c11 - c01 c34,
/// chi3 = c01 - c00 c34, chi4 = c12 c23 + c13 c34 (8 dimensions only).
/// Throws WrongFamily for chi2..chi4 on 7-dimensional input, ParseError for
/// an index outside 1..4.
GaussRat chi(int index, const ParamC& c);

struct SubsetCondition {
    std::string text;
    MultiPoly poly;
    bool nonzero = false;
};

struct AlternativeReading {
    bool active = false;
    std::string note;
    std::vector<SubsetCondition> conditions;
};

/// One subset of the decomposition: defining conditions, the representative
/// pattern and, for parametric subsets, the invariant functions.
struct SubsetRecord {
    Family family = Family::Dim7;
    int index = 0;
    int table = 0;
    std::vector<std::string> representative;  // one slot text per parameter
    std::vector<std::string> slot_names;      // "lambda", "lambda1", ... in slot order
    std::vector<std::string> invariant_texts;
    std::vector<RationalFunction> invariants;
    std::vector<SubsetCondition> conditions;  // the reading in force
    std::vector<SubsetCondition> printed_conditions;
    std::optional<AlternativeReading> alternative;

    [[nodiscard]] bool parametric() const noexcept { return !slot_names.empty(); }
    [[nodiscard]] std::string name() const;  // "U7^6", "U8^14"
};

struct ClassLabel {
    Family family = Family::Dim7;
    int subset = 0;
    std::vector<GaussRat> invariant_values;
    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

enum class Verdict { Yes, No, Undecided };
std::string_view verdict_name(Verdict v) noexcept;

struct ClassCounts {
    int single = 0;
    int parametric = 0;
    [[nodiscard]] int total() const noexcept { return single + parametric; }
};

/// Outcome of the denominator check for one invariant function.
struct DenominatorCheck {
    std::size_t invariant = 0;
    bool safe = false;
    std::string leftover;  // the part of the denominator not covered, when unsafe
};

class Classifier {
public:
    /// Reads and validates a classification data file; throws DataError.
    static Classifier load(const std::filesystem::path& path);
    static Classifier parse(std::string_view json_text);
    /// When `use_alternative` is set, records carrying an alternative
    /// reading use it instead of the printed conditions.
    static Classifier parse(std::string_view json_text, bool use_alternative);

    [[nodiscard]] const std::vector<SubsetRecord>& subsets(Family f) const;
    /// Throws DataError for an unknown index.
    [[nodiscard]] const SubsetRecord& subset(Family f, int index) const;
    [[nodiscard]] const Shorthands& shorthands() const noexcept { return shorthands_; }
    [[nodiscard]] ClassCounts counts(Family f) const;

    /// Indices of every subset whose conditions hold at c, ascending.
    [[nodiscard]] std::vector<int> matching_subsets(const ParamC& c) const;
    /// The unique matching subset; throws NoSubsetMatched or MultipleSubsetsMatched.
    [[nodiscard]] int subset_of(const ParamC& c) const;
    [[nodiscard]] bool satisfies(const SubsetRecord& s, const ParamC& c) const;

    /// Invariant values of c within its subset (empty for single orbits).
    /// Throws DenominatorVanished if a formula's denominator is zero at c.
    [[nodiscard]] std::vector<GaussRat> invariants_of(const ParamC& c) const;
    [[nodiscard]] std::vector<GaussRat> invariants_in(const SubsetRecord& s, const ParamC& c) const;
    [[nodiscard]] ClassLabel classify(const ParamC& c) const;

    /// Substitutes slot values into the representative pattern. Throws
    /// ArityMismatch when the count differs from the pattern's slot count.
    [[nodiscard]] ParamC canonical_rep(Family f, int subset, std::span<const GaussRat> slot_values) const;
    /// Uses label.invariant_values as the slot values.
    [[nodiscard]] ParamC canonical_rep(const ClassLabel& label) const;

    /// Yes iff both land in the same subset with equal invariant tuples.
    /// Undecided when either input hits a partition or denominator defect.
    /// Throws FamilyMismatch for inputs from different families.
    [[nodiscard]] Verdict isomorphic(const ParamC& a, const ParamC& b) const;

    /// Whether each invariant's denominator divides a power of the product
    /// of the subset's nonvanishing expressions.
    [[nodiscard]] std::vector<DenominatorCheck> denominator_safety(const SubsetRecord& s) const;

private:
    struct FamilyData {
        std::vector<SubsetRecord> records;
        // Distinct condition polynomials; each record condition points here.
        std::vector<MultiPoly> atoms;
        std::vector<std::vector<std::pair<std::size_t, bool>>> record_atoms;
    };
    const FamilyData& data(Family f) const { return f == Family::Dim7 ? dim7_ : dim8_; }

    Shorthands shorthands_;
    FamilyData dim7_, dim8_;
};

}  // namespace flc
