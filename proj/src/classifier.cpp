#include "flc/classifier.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flc/errors.hpp"

namespace flc {

using nlohmann::json;

GaussRat chi(int index, const ParamC& c) {
    if (index < 1 || index > 4) throw ParseError("chi index must be 1..4, got " + std::to_string(index));
    if (index == 1) return GaussRat(4) * c.at("c00") * c.at("c11") - c.at("c01") * c.at("c01");
    if (c.family() != Family::Dim8)
        throw WrongFamily("chi" + std::to_string(index) + " is defined only for TLb8");
    switch (index) {
        case 2: return GaussRat(2) * c.at("c11") - c.at("c01") * c.at("c34");
        case 3: return c.at("c01") - c.at("c00") * c.at("c34");
        default: return c.at("c12") * c.at("c23") + c.at("c13") * c.at("c34");
    }
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        default: return "undecided";
    }
}

std::string SubsetRecord::name() const {
    return std::string(family == Family::Dim7 ? "U7^" : "U8^") + std::to_string(index);
}

namespace {

int subset_total(Family f) { return f == Family::Dim7 ? 30 : 73; }

bool is_slot_name(std::string_view s) {
    return s == "lambda" || (s.size() == 7 && s.starts_with("lambda") && s[6] >= '1' && s[6] <= '9');
}

std::vector<SubsetCondition> read_conditions(const json& arr, Family f, const Shorthands& sh,
                                             const std::string& where) {
    if (!arr.is_array()) throw DataError(where + ": conditions must be an array");
    std::vector<SubsetCondition> out;
    for (const auto& item : arr) {
        SubsetCondition c;
        c.text = item.at("expr").get<std::string>();
        const auto op = item.at("op").get<std::string>();
        if (op == "≠0" || op == "!=0") c.nonzero = true;
        else if (op == "=0") c.nonzero = false;
        else throw DataError(where + ": unknown condition operator '" + op + "'");
        try {
            c.poly = parse_polynomial(c.text, parameter_variables(f), sh);
        } catch (const Error& e) {
            throw DataError(where + ": condition '" + c.text + "': " + e.what());
        }
        out.push_back(std::move(c));
    }
    return out;
}

SubsetRecord read_record(const json& j, const Shorthands& sh, bool use_alternative) {
    SubsetRecord r;
    r.family = parse_family(j.at("family").get<std::string>());
    r.index = j.at("index").get<int>();
    r.table = j.at("table").get<int>();
    const std::string where = r.name();
    if (r.index < 1 || r.index > subset_total(r.family)) throw DataError(where + ": index out of range");
    const int single_table = r.family == Family::Dim7 ? 1 : 3;
    if (r.table != single_table && r.table != single_table + 1)
        throw DataError(where + ": table " + std::to_string(r.table) + " does not belong to " +
                        std::string(family_name(r.family)));

    r.representative = j.at("representative").get<std::vector<std::string>>();
    if (r.representative.size() != parameter_names(r.family).size())
        throw DataError(where + ": representative has " + std::to_string(r.representative.size()) + " slots");
    std::set<std::string> names;
    for (const auto& slot : r.representative) {
        if (is_slot_name(slot)) names.insert(slot);
        else {
            try {
                (void)parse_polynomial(slot, nullptr);
            } catch (const Error& e) {
                throw DataError(where + ": representative slot '" + slot + "': " + e.what());
            }
        }
    }
    r.slot_names.assign(names.begin(), names.end());

    r.invariant_texts = j.at("invariants").get<std::vector<std::string>>();
    for (const auto& text : r.invariant_texts) {
        try {
            r.invariants.push_back(parse_rational_function(text, parameter_variables(r.family), sh));
        } catch (const Error& e) {
            throw DataError(where + ": invariant '" + text + "': " + e.what());
        }
    }
    const bool parametric_table = r.table == single_table + 1;
    if (parametric_table != r.parametric() || parametric_table == r.invariants.empty())
        throw DataError(where + ": parametric rows need slots and invariants, single orbits neither");

    r.printed_conditions = read_conditions(j.at("conditions"), r.family, sh, where);
    r.conditions = r.printed_conditions;
    if (j.contains("alternative_reading")) {
        const auto& alt = j.at("alternative_reading");
        AlternativeReading a;
        a.active = alt.value("active", false);
        a.note = alt.value("note", "");
        a.conditions = read_conditions(alt.at("conditions"), r.family, sh, where + " (alternative)");
        if (a.active || use_alternative) r.conditions = a.conditions;
        r.alternative = std::move(a);
    }
    return r;
}

}  // namespace

Classifier Classifier::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open classification data '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Classifier Classifier::parse(std::string_view json_text) { return parse(json_text, false); }

Classifier Classifier::parse(std::string_view json_text, bool use_alternative) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("classification data is not valid JSON: ") + e.what());
    }
    Classifier out;
    try {
        if (doc.at("format") != "flc-classification") throw DataError("unexpected data format");
        if (doc.at("version") != 1) throw DataError("unsupported data version");
        for (Family f : {Family::Dim7, Family::Dim8}) {
            const auto vars = doc.at("variables").at(std::string(family_name(f))).get<std::vector<std::string>>();
            if (vars != parameter_names(f))
                throw DataError("variable list for " + std::string(family_name(f)) + " does not match");
        }
        out.shorthands_ = doc.at("shorthands").get<Shorthands>();
        for (const auto& j : doc.at("subsets")) {
            SubsetRecord r = read_record(j, out.shorthands_, use_alternative);
            (r.family == Family::Dim7 ? out.dim7_ : out.dim8_).records.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("classification data: ") + e.what());
    }

    for (Family f : {Family::Dim7, Family::Dim8}) {
        FamilyData& d = f == Family::Dim7 ? out.dim7_ : out.dim8_;
        std::sort(d.records.begin(), d.records.end(),
                  [](const SubsetRecord& a, const SubsetRecord& b) { return a.index < b.index; });
        if (static_cast<int>(d.records.size()) != subset_total(f))
            throw DataError(std::string(family_name(f)) + " needs " + std::to_string(subset_total(f)) +
                            " subsets, found " + std::to_string(d.records.size()));
        for (std::size_t i = 0; i < d.records.size(); ++i)
            if (d.records[i].index != static_cast<int>(i) + 1)
                throw DataError(std::string(family_name(f)) + " subset indices are not 1.." +
                                std::to_string(subset_total(f)));
        std::map<std::string, std::size_t> seen;
        for (const auto& r : d.records) {
            std::vector<std::pair<std::size_t, bool>> refs;
            for (const auto& c : r.conditions) {
                const std::string key = c.poly.to_string();
                auto [it, fresh] = seen.emplace(key, d.atoms.size());
                if (fresh) d.atoms.push_back(c.poly);
                refs.emplace_back(it->second, c.nonzero);
            }
            d.record_atoms.push_back(std::move(refs));
        }
    }
    return out;
}

const std::vector<SubsetRecord>& Classifier::subsets(Family f) const { return data(f).records; }

const SubsetRecord& Classifier::subset(Family f, int index) const {
    const auto& recs = data(f).records;
    if (index < 1 || index > static_cast<int>(recs.size()))
        throw DataError("no subset " + std::to_string(index) + " in " + std::string(family_name(f)));
    return recs[static_cast<std::size_t>(index - 1)];
}

ClassCounts Classifier::counts(Family f) const {
    ClassCounts c;
    for (const auto& r : subsets(f)) (r.parametric() ? c.parametric : c.single)++;
    return c;
}

bool Classifier::satisfies(const SubsetRecord& s, const ParamC& c) const {
    if (s.family != c.family()) throw WrongFamily("subset and parameters belong to different families");
    for (const auto& cond : s.conditions)
        if (cond.poly.eval(c.values()).is_zero() == cond.nonzero) return false;
    return true;
}

std::vector<int> Classifier::matching_subsets(const ParamC& c) const {
    const FamilyData& d = data(c.family());
    std::vector<char> zero(d.atoms.size());
    for (std::size_t a = 0; a < d.atoms.size(); ++a) zero[a] = d.atoms[a].eval(c.values()).is_zero();
    std::vector<int> out;
    for (std::size_t r = 0; r < d.records.size(); ++r) {
        bool ok = true;
        for (const auto& [atom, nonzero] : d.record_atoms[r])
            if (static_cast<bool>(zero[atom]) == nonzero) {
                ok = false;
                break;
            }
        if (ok) out.push_back(d.records[r].index);
    }
    return out;
}

int Classifier::subset_of(const ParamC& c) const {
    auto m = matching_subsets(c);
    if (m.empty()) throw NoSubsetMatched("no subset of " + std::string(family_name(c.family())) + " contains " + c.to_string());
    if (m.size() > 1) {
        std::string list;
        for (int i : m) list += (list.empty() ? "" : ", ") + std::to_string(i);
        throw MultipleSubsetsMatched(c.to_string() + " lies in subsets " + list, std::move(m));
    }
    return m.front();
}

std::vector<GaussRat> Classifier::invariants_in(const SubsetRecord& s, const ParamC& c) const {
    std::vector<GaussRat> out;
    for (std::size_t i = 0; i < s.invariants.size(); ++i) {
        try {
            out.push_back(s.invariants[i].eval(c.values()));
        } catch (const DenominatorVanished&) {
            throw DenominatorVanished("invariant '" + s.invariant_texts[i] + "' of " + s.name() +
                                      " has a vanishing denominator at " + c.to_string());
        }
    }
    return out;
}

std::vector<GaussRat> Classifier::invariants_of(const ParamC& c) const {
    return invariants_in(subset(c.family(), subset_of(c)), c);
}

ClassLabel Classifier::classify(const ParamC& c) const {
    ClassLabel label;
    label.family = c.family();
    label.subset = subset_of(c);
    label.invariant_values = invariants_in(subset(c.family(), label.subset), c);
    return label;
}

ParamC Classifier::canonical_rep(Family f, int index, std::span<const GaussRat> slot_values) const {
    const SubsetRecord& s = subset(f, index);
    if (slot_values.size() != s.slot_names.size())
        throw ArityMismatch(s.name() + " takes " + std::to_string(s.slot_names.size()) + " parameters, got " +
                            std::to_string(slot_values.size()));
    ParamC out(f);
    for (std::size_t i = 0; i < s.representative.size(); ++i) {
        const std::string& slot = s.representative[i];
        const auto it = std::find(s.slot_names.begin(), s.slot_names.end(), slot);
        if (it != s.slot_names.end()) out[i] = slot_values[static_cast<std::size_t>(it - s.slot_names.begin())];
        else out[i] = parse_polynomial(slot, nullptr).constant_term();
    }
    return out;
}

ParamC Classifier::canonical_rep(const ClassLabel& label) const {
    return canonical_rep(label.family, label.subset, label.invariant_values);
}

Verdict Classifier::isomorphic(const ParamC& a, const ParamC& b) const {
    if (a.family() != b.family()) throw FamilyMismatch("cannot compare TLb7 with TLb8 parameters");
    try {
        const int sa = subset_of(a), sb = subset_of(b);
        if (sa != sb) return Verdict::No;
        const SubsetRecord& s = subset(a.family(), sa);
        return invariants_in(s, a) == invariants_in(s, b) ? Verdict::Yes : Verdict::No;
    } catch (const NoSubsetMatched&) {
        return Verdict::Undecided;
    } catch (const MultipleSubsetsMatched&) {
        return Verdict::Undecided;
    } catch (const DenominatorVanished&) {
        return Verdict::Undecided;
    }
}

std::vector<DenominatorCheck> Classifier::denominator_safety(const SubsetRecord& s) const {
    std::vector<MultiPoly> nonzero;
    for (const auto& c : s.conditions)
        if (c.nonzero) nonzero.push_back(c.poly);
    MultiPoly product(1);
    for (const auto& p : nonzero) product *= p;

    std::vector<DenominatorCheck> out;
    for (std::size_t i = 0; i < s.invariants.size(); ++i) {
        MultiPoly rest = s.invariants[i].den;
        // Strip whole nonvanishing expressions first, then test what is left
        // against a power of their product.
        for (const auto& p : nonzero) {
            if (p.is_constant()) continue;
            while (auto q = rest.divide_exact(p)) rest = std::move(*q);
        }
        DenominatorCheck check;
        check.invariant = i;
        if (rest.is_constant()) {
            check.safe = !rest.is_zero();
        } else {
            const auto power = product.pow(static_cast<unsigned>(rest.total_degree()));
            check.safe = !product.is_constant() && power.divide_exact(rest).has_value();
        }
        if (!check.safe) check.leftover = rest.to_string();
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace flc
