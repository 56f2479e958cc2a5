#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flc/classifier.hpp"
#include "flc/errors.hpp"
#include "flc/json_io.hpp"
#include "flc/verify.hpp"
#include "flc/witness.hpp"

using namespace flc;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string family;
    std::uint64_t seed = 42;
    std::uint64_t samples = 0;
    int transforms = 50;
    std::string json_path;
    std::string allowlist_path;
    std::string data_path = FLC_DATA_DIR "/classification.json";
    bool alternative = false;
    bool as_printed = false;
    std::vector<std::string> inputs;
};

std::string read_input(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::stringstream ss;
    if (arg == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot open input " + arg);
        ss << in.rdbuf();
    }
    return ss.str();
}

Classifier load_classifier(const Options& o) {
    std::ifstream in(o.data_path);
    if (!in) throw DataError("cannot open classification data " + o.data_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return Classifier::parse(ss.str(), o.alternative);
}

ErrataAllowlist load_allowlist(const Options& o) {
    if (!o.allowlist_path.empty()) return ErrataAllowlist::load(o.allowlist_path);
    const std::filesystem::path fallback = FLC_DATA_DIR "/errata_allowlist.json";
    return std::filesystem::exists(fallback) ? ErrataAllowlist::load(fallback) : ErrataAllowlist{};
}

std::vector<Family> families(const Options& o) {
    if (o.family.empty()) return {Family::Dim7, Family::Dim8};
    return {parse_family(o.family)};
}

int merge_exit(int a, int b) {
    if (a == kExitFailure || b == kExitFailure) return kExitFailure;
    return std::max(a, b);
}

int emit(const Options& o, const std::vector<VerificationReport>& reports) {
    int code = 0;
    std::string jsonl;
    for (const auto& r : reports) {
        std::cout << r.summary();
        std::cerr << r.command << " took " << r.seconds << " s\n";
        jsonl += r.to_jsonl();
        code = merge_exit(code, r.exit_code());
    }
    if (!o.json_path.empty()) {
        std::ofstream out(o.json_path, std::ios::binary);
        if (!out) throw ParseError("cannot write " + o.json_path);
        out << jsonl;
    }
    return code;
}

std::string pattern_text(const SubsetRecord& s) {
    std::string out = "L(";
    for (std::size_t i = 0; i < s.representative.size(); ++i) out += (i ? "," : "") + s.representative[i];
    return out + ")";
}

json label_json(const Classifier& cl, const ParamC& c) {
    const ClassLabel label = cl.classify(c);
    const SubsetRecord& s = cl.subset(label.family, label.subset);
    json inv = json::array();
    for (const auto& v : label.invariant_values) inv.push_back(v.to_string());
    return json{{"family", family_name(label.family)},
                {"subset", label.subset},
                {"name", s.name()},
                {"invariants", inv},
                {"rep", pattern_text(s)}};
}

int cmd_classify(const Options& o) {
    const Classifier cl = load_classifier(o);
    const ParamC c = read_family_input(read_input(o.inputs.at(0)));
    std::cout << label_json(cl, c).dump() << "\n";
    return 0;
}

int cmd_iso(const Options& o) {
    const Classifier cl = load_classifier(o);
    const ParamC a = read_family_input(read_input(o.inputs.at(0)));
    const ParamC b = read_family_input(read_input(o.inputs.at(1)));
    const Verdict v = cl.isomorphic(a, b);
    json out{{"verdict", verdict_name(v)}, {"witness", nullptr}};
    json detail = json::object();
    for (const auto& [key, c] : {std::pair{"a", &a}, std::pair{"b", &b}}) {
        try {
            detail[key] = label_json(cl, *c);
        } catch (const Error& e) {
            detail[key] = json{{"error", e.what()}};
        }
    }
    out["detail"] = detail;
    if (v == Verdict::Yes) {
        const WitnessResult w = witness_isomorphism(cl, a, b);
        if (w.status == WitnessResult::Status::Found) {
            out["witness"] = json::parse(write_transform_json(*w.transform));
        } else {
            out["witness"] = witness_status_name(w.status);
            out["unsolved"] = w.equations;
        }
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_verify_tables(const Options& o) {
    const Classifier cl = load_classifier(o);
    TableOptions opt;
    opt.seed = o.seed;
    if (o.samples > 0) opt.instances = static_cast<int>(o.samples);
    opt.transforms = o.transforms;
    if (!o.family.empty()) opt.family = parse_family(o.family);
    return emit(o, {verify_tables(cl, load_allowlist(o), opt)});
}

int cmd_fuzz(const Options& o) {
    const Classifier cl = load_classifier(o);
    const ErrataAllowlist allow = load_allowlist(o);
    std::vector<VerificationReport> reports;
    for (Family f : families(o)) reports.push_back(fuzz(cl, allow, {f, o.samples > 0 ? o.samples : 10000, o.seed}));
    return emit(o, reports);
}

int cmd_check_formulas(const Options& o) {
    const ErrataAllowlist allow = load_allowlist(o);
    std::vector<VerificationReport> reports;
    for (Family f : families(o))
        reports.push_back(check_formulas(allow, {f, o.samples > 0 ? o.samples : 1000, o.seed}));
    return emit(o, reports);
}

int cmd_derive_constraints(const Options& o) {
    json all = json::array();
    int code = 0;
    for (Family f : families(o)) {
        const auto reading = o.as_printed ? RawTableReading::AsPrinted : RawTableReading::Corrected;
        const DerivedConstraints d = derive_constraints(f, reading);
        const auto stated = stated_relations(f);
        std::cout << family_name(f) << (o.as_printed ? " (as printed)" : "") << "\n";
        json items = json::array();
        int missing = 0;
        for (const auto& p : stated) {
            const bool ok = in_truncated_ideal(p, d.reduced, 2);
            missing += ok ? 0 : 1;
            std::cout << "  " << (ok ? "matched " : "missing ") << p.to_string() << "\n";
            items.push_back({{"relation", p.to_string()}, {"status", ok ? "matched" : "missing"}});
        }
        for (const auto& p : d.reduced) {
            if (in_truncated_ideal(p, stated, 2)) continue;
            std::cout << "  extra   " << p.to_string() << "\n";
            items.push_back({{"relation", p.to_string()}, {"status", "extra"}});
        }
        const std::size_t linear = linear_relation_rank(d.reduced);
        std::cout << "  derived: " << d.raw.size() << " raw, " << d.reduced.size() << " reduced, " << linear
                  << " independent linear relations\n";
        json derived = json::array();
        for (const auto& p : d.reduced) derived.push_back(p.to_string());
        all.push_back({{"family", family_name(f)},
                       {"reading", o.as_printed ? "as-printed" : "corrected"},
                       {"derived", derived},
                       {"comparison", items},
                       {"independent_linear", linear}});
        if (missing > 0) code = kExitFailure;
    }
    if (!o.json_path.empty()) {
        std::ofstream out(o.json_path, std::ios::binary);
        if (!out) throw ParseError("cannot write " + o.json_path);
        out << all.dump() << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification toolkit for 7- and 8-dimensional filiform Leibniz algebras"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "tlb7 or tlb8");
        sub->add_option("--seed", o.seed, "root seed");
        sub->add_option("--samples", o.samples, "number of samples");
        sub->add_option("--json", o.json_path, "write a JSON report here");
        sub->add_option("--errata-allowlist", o.allowlist_path, "known-errata file");
        sub->add_option("--data", o.data_path, "classification data file");
        sub->add_flag("--alternative-reading", o.alternative, "use alternative subset readings where recorded");
    };

    auto* classify = app.add_subcommand("classify", "subset, invariants and representative of one algebra");
    classify->add_option("input", o.inputs, "JSON text, file, or - for stdin")->required()->expected(1);
    add_common(classify);

    auto* iso = app.add_subcommand("iso", "decide isomorphism of two algebras");
    iso->add_option("inputs", o.inputs, "two JSON texts or files")->required()->expected(2);
    add_common(iso);

    auto* verify = app.add_subcommand("verify-tables", "check every table row");
    verify->add_option("--transforms", o.transforms, "transforms per parametric instance");
    add_common(verify);

    auto* fz = app.add_subcommand("fuzz", "partition and invariance fuzzing");
    add_common(fz);

    auto* derive = app.add_subcommand("derive-constraints", "structure constraints from the Leibniz identity");
    derive->add_flag("--as-printed", o.as_printed, "use the printed [e2,e4] entry of the 8-dimensional table");
    add_common(derive);

    auto* formulas = app.add_subcommand("check-formulas", "compare closed-form transformation laws with the action");
    add_common(formulas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*iso) return cmd_iso(o);
        if (*verify) return cmd_verify_tables(o);
        if (*fz) return cmd_fuzz(o);
        if (*derive) return cmd_derive_constraints(o);
        if (*formulas) return cmd_check_formulas(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TemplateMismatch& e) {
        std::cerr << "template mismatch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FamilyMismatch& e) {
        std::cerr << "family mismatch: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
