#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "flc/classifier.hpp"

namespace flc {

/// Known defects, keyed on (table, row, check) for table rows and on
/// (formula label, "closed_form") for transformation formulas.
class ErrataAllowlist {
public:
    static ErrataAllowlist load(const std::filesystem::path& path);  // DataError
    static ErrataAllowlist parse(std::string_view json_text);

    [[nodiscard]] bool contains(int table, int row, std::string_view check) const;
    [[nodiscard]] bool contains_formula(std::string_view label) const;
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size() + formulas_.size(); }

private:
    std::set<std::tuple<int, int, std::string>, std::less<>> rows_;
    std::set<std::string, std::less<>> formulas_;
};

enum class CheckStatus { Pass, Fail, Known };
std::string_view check_status_name(CheckStatus s) noexcept;  // "pass", "fail", "known"

/// One line of a report.
struct CheckRecord {
    Family family = Family::Dim7;
    int table = 0;      // 0 for records not tied to a table row
    int row = 0;        // subset index
    std::string check;  // "leibniz", "filiform", "self_classification", ...
    CheckStatus status = CheckStatus::Pass;
    long long count = 0;  // violations behind a failing record
    std::string detail;   // first witness or explanation
    std::vector<std::pair<std::string, std::string>> fields;  // extra JSON members
};

struct VerificationReport {
    std::string command;
    std::uint64_t seed = 0;
    std::string run_id;  // digest of (command, options, seed, version)
    long long tables_checked = 0;
    long long rows_passed = 0;
    long long rows_failed = 0;  // regressions and known errata together
    long long rows_known = 0;   // of rows_failed, those with only allowlisted failures
    long long samples = 0;
    std::vector<CheckRecord> records;
    double seconds = 0;  // wall time; kept out of the JSON so reports stay byte-identical

    /// 0 without failures, 3 when every failure is allowlisted, 1 otherwise.
    [[nodiscard]] int exit_code() const noexcept;
    [[nodiscard]] std::size_t unexpected_failures() const noexcept;
    /// Header line, one line per record, summary line.
    [[nodiscard]] std::string to_jsonl() const;
    [[nodiscard]] std::string summary() const;
};

/// Per-sample generator seeded from (root seed, stream, index) so that
/// results do not depend on evaluation order.
std::mt19937_64 sample_rng(std::uint64_t root, std::uint64_t stream, std::uint64_t index);

/// Weighted pool {0, +-1, +-2, +-1/2, +-i, 1+i}; zero about half the time.
GaussRat sample_value(std::mt19937_64& rng, bool nonzero = false);
/// Random parameters; 8-dimensional draws with c34 != 0 get c23 = -2 c12 so
/// that they stay admissible.
ParamC sample_params(std::mt19937_64& rng, Family f);
/// Random reduced transform that is adapted for c.
AdaptedTransform sample_transform(std::mt19937_64& rng, const ParamC& c);

/// A parametric row instantiated at random nonzero slot values, resampled
/// until it is admissible and lies in its own subset only.
std::optional<ParamC> sample_member(const Classifier& cl, const SubsetRecord& s, std::mt19937_64& rng,
                                    int max_attempts = 200);

struct TableOptions {
    std::uint64_t seed = 42;
    int instances = 50;   // parametric instantiations per row
    int transforms = 50;  // transforms per instantiation
    std::optional<Family> family;
};

/// For every table row: Leibniz identity, filiform dimensions,
/// self-classification, denominator safety and, for parametric rows, orbit
/// invariance of subset and invariant tuple under sampled transforms.
VerificationReport verify_tables(const Classifier& cl, const ErrataAllowlist& allow, const TableOptions& opt);

struct FuzzOptions {
    Family family = Family::Dim7;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 42;
};

/// Partition (exactly one subset matches) and invariance of subset and
/// invariants under one sampled transform per sample.
VerificationReport fuzz(const Classifier& cl, const ErrataAllowlist& allow, const FuzzOptions& opt);

/// Mismatch between a published formula and the direct action, shrunk to a
/// witness with as many zero and unit entries as possible.
struct FormulaMismatch {
    std::string formula;
    ParamC input;
    AdaptedTransform transform;
    GaussRat closed_form;
    GaussRat direct;
    long long occurrences = 0;
};

struct FormulaOptions {
    Family family = Family::Dim7;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 42;
};

/// Formulas expected to agree exactly with the direct action.
bool formula_expected_exact(std::string_view label) noexcept;

/// Mismatches per formula label, in parameter order.
std::vector<FormulaMismatch> compare_formulas(const FormulaOptions& opt);
VerificationReport check_formulas(const ErrataAllowlist& allow, const FormulaOptions& opt);

}  // namespace flc
