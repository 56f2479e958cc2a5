#include <algorithm>
#include <functional>
#include <map>

#include "flc/errors.hpp"
#include "flc/families.hpp"
#include "flc/rational_function.hpp"

namespace flc {
namespace {

// Echelon basis of a space of polynomials, keyed by leading monomial.
class PolySpan {
public:
    // Reduces p against the basis; zero means p lies in the span.
    MultiPoly reduce(MultiPoly p) const {
        MultiPoly rest;
        while (!p.is_zero()) {
            const auto it = basis_.find(p.leading_monomial());
            if (it == basis_.end()) {
                // Move the unmatched leading term aside and continue below it.
                MultiPoly::Terms t;
                t.emplace(p.leading_monomial(), p.leading_coefficient());
                const MultiPoly lead(p.variables(), std::move(t));
                rest += lead;
                p -= lead;
                continue;
            }
            p -= MultiPoly(p.leading_coefficient()) * it->second;
        }
        return rest;
    }
    bool contains(const MultiPoly& p) const { return reduce(p).is_zero(); }
    bool insert(const MultiPoly& p) {
        MultiPoly r = reduce(p);
        if (r.is_zero()) return false;
        r = r.monic();
        basis_.emplace(r.leading_monomial(), std::move(r));
        return true;
    }
    [[nodiscard]] std::size_t size() const { return basis_.size(); }

private:
    std::map<Monomial, MultiPoly, std::greater<>> basis_;
};

void monomials_up_to(std::size_t nvars, unsigned degree, std::vector<Monomial>& out) {
    std::vector<std::uint32_t> e(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned left) {
        if (v == nvars) {
            out.emplace_back(e);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            e[v] = d;
            rec(v + 1, left - d);
        }
        e[v] = 0;
    };
    rec(0, degree);
}

std::vector<std::string> raw_variable_names(Family f) {
    if (f == Family::Dim7)
        return {"b13", "b14", "b15", "b24", "a25", "b00", "b01", "b11", "b12", "b23", "a14", "a15"};
    return {"b13", "b14", "b15", "b24", "b00", "b01", "b11", "b12", "b23", "b34", "a14", "a15", "a16", "a26"};
}

const MultiPoly::Variables& raw_variables(Family f) {
    static const MultiPoly::Variables dim7 = MultiPoly::make_variables(raw_variable_names(Family::Dim7));
    static const MultiPoly::Variables dim8 = MultiPoly::make_variables(raw_variable_names(Family::Dim8));
    return f == Family::Dim7 ? dim7 : dim8;
}

// Reduced echelon form of linear polynomials; each row is monic in its
// pivot variable and the pivot is eliminated from every other row.
std::vector<MultiPoly> linear_rref(const std::vector<MultiPoly>& rows) {
    std::vector<MultiPoly> out;
    auto coeff = [](const MultiPoly& p, const Monomial& m) {
        const auto it = p.terms().find(m);
        return it == p.terms().end() ? GaussRat() : it->second;
    };
    for (const auto& row : rows) {
        MultiPoly q = row;
        for (const auto& r : out) {
            const GaussRat c = coeff(q, r.leading_monomial());
            if (!c.is_zero()) q -= MultiPoly(c) * r;
        }
        if (q.is_zero()) continue;
        q = q.monic();
        for (auto& r : out) {
            const GaussRat c = coeff(r, q.leading_monomial());
            if (!c.is_zero()) r -= MultiPoly(c) * q;
        }
        out.push_back(std::move(q));
    }
    std::sort(out.begin(), out.end(),
              [](const MultiPoly& a, const MultiPoly& b) { return a.leading_monomial() > b.leading_monomial(); });
    return out;
}

// Substitutes each pivot variable by its value from the echelon rows.
MultiPoly reduce_modulo_linear(MultiPoly p, const std::vector<MultiPoly>& rref) {
    for (const auto& r : rref) {
        const Monomial& lm = r.leading_monomial();
        if (lm.is_one()) continue;
        std::size_t var = 0;
        while (lm.exponent(var) == 0) ++var;
        const MultiPoly pivot = MultiPoly::variable(r.variables(), var);
        p = p.substitute(var, pivot - r);
    }
    return p;
}

// A single term in a single variable, c * x^k.
std::optional<std::size_t> pure_power_variable(const MultiPoly& p) {
    if (p.terms().size() != 1) return std::nullopt;
    const auto vars = p.occurring_variables();
    if (vars.size() != 1) return std::nullopt;
    return vars.front();
}

void sort_unique(std::vector<MultiPoly>& v) {
    std::sort(v.begin(), v.end(), [](const MultiPoly& a, const MultiPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a.to_string() < b.to_string();
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SymbolicTable raw_table(Family f, RawTableReading reading) {
    const auto& vars = raw_variables(f);
    auto v = [&](std::string_view name) { return MultiPoly::variable(vars, name); };
    const std::size_t n = family_dim(f);
    const std::size_t top = n - 1;
    BasicAlgebra<MultiPoly> t(n);
    for (std::size_t i = 1; i + 1 < n; ++i) t.set(i, 0, i + 1, MultiPoly(1));
    for (std::size_t i = 1; i + 1 < n; ++i) t.set(0, i, i + 1, MultiPoly(-1));
    t.add(0, 0, top, v("b00"));
    t.add(0, 1, top, v("b01"));
    t.add(1, 1, top, v("b11"));
    if (f == Family::Dim7) {
        t.add_antisymmetric(1, 2, 4, v("a14"));
        t.add_antisymmetric(1, 2, 5, v("a15"));
        t.add_antisymmetric(1, 2, 6, v("b12"));
        t.add_antisymmetric(1, 3, 5, v("a14"));
        t.add_antisymmetric(1, 3, 6, v("b13"));
        t.add_antisymmetric(1, 4, 5, -v("a25"));
        t.add_antisymmetric(1, 4, 6, v("b14"));
        t.add_antisymmetric(2, 3, 5, v("a25"));
        t.add_antisymmetric(2, 3, 6, v("b23"));
        t.add_antisymmetric(1, 5, 6, v("b15"));
        t.add_antisymmetric(2, 4, 6, v("b24"));
    } else {
        t.add_antisymmetric(1, 2, 4, v("a14"));
        t.add_antisymmetric(1, 2, 5, v("a15"));
        t.add_antisymmetric(1, 2, 6, v("a16"));
        t.add_antisymmetric(1, 2, 7, v("b12"));
        t.add_antisymmetric(1, 3, 5, v("a14"));
        t.add_antisymmetric(1, 3, 6, v("a15"));
        t.add_antisymmetric(1, 3, 7, v("b13"));
        t.add_antisymmetric(1, 4, 6, v("a14") - v("a26"));
        t.add_antisymmetric(1, 4, 7, v("b14"));
        t.add_antisymmetric(1, 5, 7, v("b15"));
        t.add_antisymmetric(2, 3, 6, v("a26"));
        t.add_antisymmetric(2, 3, 7, v("b23"));
        t.add_antisymmetric(2, 4, reading == RawTableReading::AsPrinted ? 6 : 7, v("b24"));
        for (std::size_t i = 1; i <= 3; ++i) t.add_antisymmetric(i, 7 - i, 7, i % 2 ? -v("b34") : v("b34"));
    }
    return {vars, std::move(t)};
}

Algebra instantiate(const BasicAlgebra<MultiPoly>& law, const std::vector<GaussRat>& values) {
    const std::size_t n = law.dim();
    Algebra out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!law.gamma(i, j, k).is_zero()) out.set(i, j, k, law.gamma(i, j, k).eval(values));
    return out;
}

DerivedConstraints derive_constraints(Family f, RawTableReading reading) {
    const SymbolicTable table = raw_table(f, reading);
    DerivedConstraints out;
    out.variables = table.variables;
    for (const auto& v : leibniz_violations(table.law))
        for (const auto& coord : v.defect.coords())
            if (!coord.is_zero()) out.raw.push_back(coord.monic());
    sort_unique(out.raw);

    std::vector<MultiPoly> linear, nonlinear;
    for (const auto& p : out.raw) (p.total_degree() <= 1 ? linear : nonlinear).push_back(p);
    for (;;) {
        const auto rref = linear_rref(linear);
        std::vector<MultiPoly> kept;
        bool changed = false;
        for (const auto& p : nonlinear) {
            const MultiPoly q = reduce_modulo_linear(p, rref);
            if (q.is_zero()) continue;
            if (q.total_degree() <= 1) {
                linear.push_back(q);
                changed = true;
            } else if (const auto var = pure_power_variable(q)) {
                // c * x^k = 0 forces x = 0.
                linear.push_back(MultiPoly::variable(out.variables, *var));
                changed = true;
            } else {
                kept.push_back(q.monic());
            }
        }
        nonlinear = std::move(kept);
        sort_unique(nonlinear);
        if (!changed) {
            out.reduced = rref;
            break;
        }
    }
    out.reduced.insert(out.reduced.end(), nonlinear.begin(), nonlinear.end());
    return out;
}

std::vector<MultiPoly> stated_relations(Family f) {
    const auto& vars = raw_variables(f);
    std::vector<std::string> texts;
    if (f == Family::Dim7)
        texts = {"b13 - a15", "b14 - a14 + b23", "b15", "b24", "a25"};
    else
        texts = {"b13 - a16", "b14 - a15 + b23", "b24 - a26", "b15 - a14 + 2*a26", "b34*(a26 + 2*a14)"};
    std::vector<MultiPoly> out;
    for (const auto& t : texts) out.push_back(parse_polynomial(t, vars));
    return out;
}

bool in_truncated_ideal(const MultiPoly& p, const std::vector<MultiPoly>& gens, unsigned max_degree) {
    if (p.is_zero()) return true;
    std::size_t nvars = 0;
    MultiPoly::Variables vars = p.variables();
    for (const auto& g : gens)
        if (!vars) vars = g.variables();
    if (vars) nvars = vars->size();
    PolySpan span;
    for (const auto& g : gens) {
        if (g.is_zero() || g.total_degree() > max_degree) continue;
        std::vector<Monomial> multipliers;
        monomials_up_to(nvars, max_degree - g.total_degree(), multipliers);
        for (const auto& m : multipliers) {
            MultiPoly::Terms t;
            t.emplace(m, GaussRat(1));
            span.insert(MultiPoly(vars, std::move(t)) * g);
        }
    }
    return span.contains(p);
}

std::size_t linear_relation_rank(const std::vector<MultiPoly>& set) {
    PolySpan span;
    for (const auto& p : set)
        if (p.total_degree() <= 1) span.insert(p);
    return span.size();
}

}  // namespace flc
