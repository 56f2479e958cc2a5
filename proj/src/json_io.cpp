#include "flc/json_io.hpp"

#include <nlohmann/json.hpp>

#include "flc/errors.hpp"

namespace flc {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

GaussRat read_value(const json& v) {
    if (v.is_string()) return GaussRat::parse(v.get<std::string>());
    if (v.is_number_integer()) return GaussRat(Rational(v.get<long long>()));
    throw ParseError("expected a string or integer value, got " + v.dump());
}

const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return obj[key];
}

std::size_t read_index(const json& obj, const char* key) {
    const json& v = member(obj, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(std::string("bad index '") + key + "'");
    return v.get<std::size_t>();
}

ParamC params_from(const json& doc) {
    const json& fam = member(doc, "family");
    if (!fam.is_string()) throw ParseError("'family' must be a string");
    ParamC c(parse_family(fam.get<std::string>()));
    const json& values = member(doc, "c");
    if (values.is_array()) {
        if (values.size() != c.size()) throw ParseError("'c' has the wrong number of entries");
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = read_value(values[i]);
    } else if (values.is_object()) {
        for (const auto& [name, v] : values.items()) {
            try {
                c.set(name, read_value(v));
            } catch (const MissingVariable&) {
                throw ParseError("unknown parameter '" + name + "'");
            }
        }
    } else {
        throw ParseError("'c' must be an object or an array");
    }
    return c;
}

Algebra algebra_from(const json& doc) {
    const std::size_t n = read_index(doc, "dim");
    if (n == 0) throw ParseError("'dim' must be positive");
    Algebra a(n);
    const json& entries = member(doc, "entries");
    if (!entries.is_array()) throw ParseError("'entries' must be an array");
    for (const auto& e : entries) {
        const std::size_t i = read_index(e, "i"), j = read_index(e, "j"), k = read_index(e, "k");
        if (i >= n || j >= n || k >= n) throw ParseError("entry index out of range: " + e.dump());
        a.set(i, j, k, read_value(member(e, "v")));
    }
    return a;
}

}  // namespace

ParamC read_params_json(std::string_view text) { return params_from(parse_json(text)); }

std::string write_params_json(const ParamC& c) {
    json values = json::object();
    for (std::size_t i = 0; i < c.size(); ++i) values[parameter_names(c.family())[i]] = c[i].to_string();
    return json{{"family", family_name(c.family())}, {"c", values}}.dump();
}

Algebra read_algebra_json(std::string_view text) { return algebra_from(parse_json(text)); }

std::string write_algebra_json(const Algebra& a) {
    json entries = json::array();
    for (const auto& e : nonzero_entries(a))
        entries.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"v", e.value.to_string()}});
    return json{{"dim", a.dim()}, {"entries", entries}}.dump();
}

ParamC read_family_input(std::string_view text) {
    const json doc = parse_json(text);
    if (doc.is_object() && doc.contains("family")) return params_from(doc);
    const Algebra a = algebra_from(doc);
    if (a.dim() == 7) return extract_params(Family::Dim7, a);
    if (a.dim() == 8) return extract_params(Family::Dim8, a);
    throw ParseError("only 7- and 8-dimensional algebras can be classified");
}

AdaptedTransform read_transform_json(std::string_view text, Family f) {
    const json doc = parse_json(text);
    AdaptedTransform t = AdaptedTransform::identity(f);
    t.a0 = read_value(member(doc, "A0"));
    t.a1 = read_value(member(doc, "A1"));
    const json& b = member(doc, "B");
    if (!b.is_array() || b.size() != t.b.size()) throw ParseError("'B' must list " + std::to_string(t.b.size()) + " values");
    for (std::size_t i = 0; i < t.b.size(); ++i) t.b[i] = read_value(b[i]);
    return t;
}

std::string write_transform_json(const AdaptedTransform& t) {
    json b = json::array();
    for (const auto& x : t.b) b.push_back(x.to_string());
    return json{{"A0", t.a0.to_string()}, {"A1", t.a1.to_string()}, {"B", b}}.dump();
}

}  // namespace flc
