#include "flc/witness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "flc/errors.hpp"

namespace flc {

std::string_view witness_status_name(WitnessResult::Status s) noexcept {
    switch (s) {
        case WitnessResult::Status::Found: return "found";
        case WitnessResult::Status::RequiresAlgebraicExtension: return "algebraic-extension-required";
        default: return "unresolved";
    }
}

namespace {

constexpr std::size_t kA0 = 0;
constexpr std::size_t kB1 = 2;

const MultiPoly::Variables& unknowns(Family f) {
    static const auto dim7 = MultiPoly::make_variables({"A0", "A1", "B1", "B2", "B3"});
    static const auto dim8 = MultiPoly::make_variables({"A0", "A1", "B1", "B2", "B3", "B4", "B5"});
    return f == Family::Dim7 ? dim7 : dim8;
}

BasicAlgebra<MultiPoly> lift(const Algebra& a) {
    BasicAlgebra<MultiPoly> out(a.dim());
    for (const auto& e : nonzero_entries(a)) out.set(e.i, e.j, e.k, MultiPoly(e.value));
    return out;
}

void normalize(std::vector<MultiPoly>& eqs) {
    std::vector<MultiPoly> out;
    std::set<std::string> seen;
    for (auto& p : eqs) {
        if (p.is_zero()) continue;
        MultiPoly m = p.monic();
        if (seen.insert(m.to_string()).second) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a.terms().size() < b.terms().size();
    });
    eqs = std::move(out);
}

// Dense univariate polynomial, coefficient i of x^i, no trailing zeros.
using Upoly = std::vector<GaussRat>;

void trim(Upoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Upoly to_upoly(const MultiPoly& p, std::size_t var) {
    Upoly out;
    for (const auto& [m, c] : p.terms()) {
        const std::size_t e = m.exponent(var);
        if (out.size() <= e) out.resize(e + 1);
        out[e] += c;
    }
    trim(out);
    return out;
}

Upoly remainder(Upoly a, const Upoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        const GaussRat f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

Upoly gcd(Upoly a, Upoly b) {
    while (!b.empty()) {
        Upoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    const GaussRat lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

GaussRat eval(const Upoly& a, const GaussRat& x) {
    GaussRat acc;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Quotient by (x - r); r must be a root.
Upoly deflate(const Upoly& a, const GaussRat& r) {
    Upoly q(a.size() - 1);
    GaussRat carry;
    for (std::size_t i = a.size() - 1; i > 0; --i) {
        carry = a[i] + carry * r;
        q[i - 1] = carry;
    }
    return q;
}

const std::vector<GaussRat>& small_values() {
    static const std::vector<GaussRat> v = [] {
        std::vector<GaussRat> out;
        for (const GaussRat& x : {GaussRat(1), GaussRat(2), GaussRat(3), GaussRat(4), GaussRat(Rational(1, 2)),
                                  GaussRat(Rational(1, 4)), GaussRat(1, 1), GaussRat(1, -1)})
            for (const GaussRat& unit : {GaussRat(1), GaussRat(-1), GaussRat::i(), GaussRat(0, -1)})
                out.push_back(x * unit);
        return out;
    }();
    return v;
}

// Removes powers of A0 and B1, which never vanish for an adapted transform.
MultiPoly strip_scalings(const MultiPoly& p) {
    if (p.is_zero()) return p;
    std::uint32_t a0 = UINT32_MAX, b1 = UINT32_MAX;
    for (const auto& [m, c] : p.terms()) {
        a0 = std::min(a0, m.exponent(kA0));
        b1 = std::min(b1, m.exponent(kB1));
    }
    if (a0 == 0 && b1 == 0) return p;
    const Monomial divisor = Monomial::variable(kA0, a0) * Monomial::variable(kB1, b1);
    MultiPoly::Terms terms;
    for (const auto& [m, c] : p.terms()) terms.emplace(m.quotient(divisor), c);
    return MultiPoly(p.variables(), std::move(terms));
}

class Search {
public:
    Search(const ParamC& from, const ParamC& to) : from_(from), to_(to), vars_(unknowns(from.family())) {
        // For 8 dimensions A0 + A1*c34 is nonzero as well.
        if (from.family() == Family::Dim8 && !from.at("c34").is_zero())
            adapted_factor_ = MultiPoly::variable(vars_, kA0) + MultiPoly(from.at("c34")) * MultiPoly::variable(vars_, 1);
    }

    WitnessResult run(std::vector<MultiPoly> eqs) {
        WitnessResult out;
        if (step(std::move(eqs), {})) {
            out.status = WitnessResult::Status::Found;
            out.transform = found_;
            return out;
        }
        if (!radicals_.empty() && stuck_.empty() && budget_ > 0) {
            out.status = WitnessResult::Status::RequiresAlgebraicExtension;
            out.equations.assign(radicals_.begin(), radicals_.end());
        } else {
            out.status = WitnessResult::Status::Unresolved;
            out.equations.assign(stuck_.begin(), stuck_.end());
            out.equations.insert(out.equations.end(), radicals_.begin(), radicals_.end());
            if (budget_ <= 0) out.equations.emplace_back("search budget exhausted");
        }
        return out;
    }

private:
    using Bindings = std::vector<std::pair<std::size_t, MultiPoly>>;

    [[nodiscard]] bool must_be_nonzero(std::size_t v) const { return v == kA0 || v == kB1; }

    bool step(std::vector<MultiPoly> eqs, Bindings bound) {
        if (--budget_ <= 0) return false;
        for (auto& p : eqs) {
            p = strip_scalings(p);
            if (!adapted_factor_) continue;
            while (!p.is_constant()) {
                auto q = p.divide_exact(*adapted_factor_);
                if (!q) break;
                p = std::move(*q);
            }
        }
        normalize(eqs);
        for (const auto& p : eqs)
            if (p.is_constant()) return false;
        if (eqs.empty()) return finish(bound);

        // Univariate equations pin their variable to the roots of their gcd.
        std::map<std::size_t, Upoly> pinned;
        for (const auto& p : eqs) {
            const auto occ = p.occurring_variables();
            if (occ.size() != 1) continue;
            Upoly u = to_upoly(p, occ.front());
            auto [it, fresh] = pinned.emplace(occ.front(), u);
            if (!fresh) it->second = gcd(it->second, u);
            if (it->second.size() == 1) return false;
        }
        if (!pinned.empty()) {
            const auto best = std::min_element(pinned.begin(), pinned.end(),
                                               [](auto& a, auto& b) { return a.second.size() < b.second.size(); });
            for (const auto& r : solve_univariate(best->second, best->first)) {
                if (must_be_nonzero(best->first) && r.is_zero()) continue;
                if (assign(eqs, bound, best->first, MultiPoly(r))) return true;
            }
            return false;
        }

        // Eliminate a variable that occurs linearly with a constant coefficient,
        // preferring the later unknowns.
        for (std::size_t v = vars_->size(); v-- > 0;)
            for (const auto& p : eqs)
                if (auto expr = linear_solution(p, v)) return assign(eqs, bound, v, *expr);

        // Otherwise fix a free unknown and continue.
        const std::size_t v = pick_free(eqs);
        static const GaussRat trial[] = {GaussRat(0),  GaussRat(1),  GaussRat(-1), GaussRat(2),
                                         GaussRat(-2), GaussRat(Rational(1, 2)), GaussRat(Rational(-1, 2)),
                                         GaussRat::i(), GaussRat(0, -1), GaussRat(1, 1)};
        for (const auto& value : trial) {
            if (must_be_nonzero(v) && value.is_zero()) continue;
            if (assign(eqs, bound, v, MultiPoly(value))) return true;
        }
        return false;
    }

    bool assign(const std::vector<MultiPoly>& eqs, Bindings bound, std::size_t v, const MultiPoly& value) {
        std::vector<MultiPoly> next;
        next.reserve(eqs.size());
        for (const auto& p : eqs) next.push_back(p.substitute(v, value));
        bound.emplace_back(v, value);
        return step(std::move(next), std::move(bound));
    }

    std::size_t pick_free(const std::vector<MultiPoly>& eqs) const {
        std::vector<int> count(vars_->size(), 0);
        for (const auto& p : eqs)
            for (std::size_t v : p.occurring_variables()) ++count[v];
        // Highest-index unknown that still occurs; scalings go last.
        for (std::size_t v = vars_->size(); v-- > 0;)
            if (count[v] > 0 && !must_be_nonzero(v)) return v;
        for (std::size_t v = vars_->size(); v-- > 0;)
            if (count[v] > 0) return v;
        return 0;
    }

    std::optional<MultiPoly> linear_solution(const MultiPoly& p, std::size_t v) const {
        std::optional<GaussRat> coeff;
        for (const auto& [m, c] : p.terms()) {
            const auto e = m.exponent(v);
            if (e == 0) continue;
            if (e > 1 || coeff || m != Monomial::variable(v)) return std::nullopt;
            coeff = c;
        }
        if (!coeff) return std::nullopt;
        const MultiPoly x = MultiPoly::variable(vars_, v);
        return MultiPoly(GaussRat(-1) / *coeff) * (p - MultiPoly(*coeff) * x);
    }

    std::vector<GaussRat> solve_univariate(Upoly p, std::size_t var) {
        const std::string name = (*vars_)[var];
        std::vector<GaussRat> roots;
        if (p.front().is_zero()) {
            roots.emplace_back();
            while (p.front().is_zero()) p.erase(p.begin());
        }
        // p(x) = q(x^g)
        std::size_t g = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (!p[i].is_zero()) g = std::gcd(g, i);
        if (g == 0) return roots;
        Upoly q;
        for (std::size_t i = 0; i < p.size(); i += g) q.push_back(p[i]);

        std::vector<GaussRat> ys;
        while (q.size() > 3) {
            const auto& cand = small_values();
            const auto hit = std::find_if(cand.begin(), cand.end(), [&](const GaussRat& v) { return eval(q, v).is_zero(); });
            if (hit == cand.end()) break;
            ys.push_back(*hit);
            q = deflate(q, *hit);
        }
        const std::string y = g == 1 ? name : name + "^" + std::to_string(g);
        if (q.size() == 2) {
            ys.push_back(-q[0] / q[1]);
        } else if (q.size() == 3) {
            const GaussRat disc = q[1] * q[1] - GaussRat(4) * q[2] * q[0];
            const RootSearch rs = exact_roots(disc, 2);
            const std::string eq = "sqrt(" + disc.to_string() + ") for " + y;
            if (!rs.exhaustive) stuck_.insert(eq + " (root search out of range)");
            else if (rs.roots.empty()) radicals_.insert(eq);
            for (const auto& sq : rs.roots) ys.push_back((-q[1] + sq) / (GaussRat(2) * q[2]));
        } else if (q.size() > 3) {
            std::string text;
            for (std::size_t i = q.size(); i-- > 0;)
                if (!q[i].is_zero()) text += (text.empty() ? "" : " + ") + ("(" + q[i].to_string() + ")") + (i ? "*" + y + "^" + std::to_string(i) : "");
            stuck_.insert(text + " = 0");
        }

        for (const auto& v : ys) {
            if (g == 1) {
                roots.push_back(v);
                continue;
            }
            const RootSearch rs = exact_roots(v, static_cast<int>(g));
            const std::string eq = y + " = " + v.to_string();
            if (!rs.exhaustive) stuck_.insert(eq + " (root search out of range)");
            else if (rs.roots.empty()) radicals_.insert(eq);
            roots.insert(roots.end(), rs.roots.begin(), rs.roots.end());
        }
        std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) { return a.to_string() < b.to_string(); });
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }

    bool finish(const Bindings& bound) {
        std::vector<GaussRat> values(vars_->size());
        std::vector<bool> fixed(vars_->size(), false);
        for (const auto& [v, expr] : bound) fixed[v] = true;
        for (std::size_t v = 0; v < values.size(); ++v)
            if (!fixed[v]) values[v] = must_be_nonzero(v) ? GaussRat(1) : GaussRat(0);
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) values[it->first] = it->second.eval(values);

        AdaptedTransform t;
        t.family = from_.family();
        t.a0 = values[0];
        t.a1 = values[1];
        t.b.assign(values.begin() + 2, values.end());
        try {
            if (apply_adapted_direct(from_, t) != to_) return false;
        } catch (const NotAdapted&) {
            return false;
        } catch (const TemplateMismatch&) {
            return false;
        }
        found_ = std::move(t);
        return true;
    }

    const ParamC& from_;
    const ParamC& to_;
    MultiPoly::Variables vars_;
    int budget_ = 1500;
    std::set<std::string> radicals_, stuck_;
    AdaptedTransform found_;
    std::optional<MultiPoly> adapted_factor_;
};

}  // namespace

TransformEquations transform_equations(const ParamC& from, const ParamC& to) {
    if (from.family() != to.family()) throw FamilyMismatch("parameters belong to different families");
    const Family f = from.family();
    const auto& vars = unknowns(f);
    const std::size_t n = family_dim(f);
    const BasicAlgebra<MultiPoly> law = lift(build_family(from));
    const Algebra target = build_family(to);

    using PVec = BasicVec<MultiPoly>;
    std::vector<PVec> cols(n, PVec(n));
    cols[0][0] = MultiPoly::variable(vars, 0);
    cols[0][1] = MultiPoly::variable(vars, 1);
    for (std::size_t j = 0; j < transform_b_count(f); ++j) cols[1][j + 1] = MultiPoly::variable(vars, j + 2);
    for (std::size_t i = 2; i < n; ++i) cols[i] = bracket(law, cols[i - 1], cols[0]);

    TransformEquations out{vars, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            PVec diff = bracket(law, cols[i], cols[j]);
            for (std::size_t k = 0; k < n; ++k)
                if (const GaussRat& g = target.gamma(i, j, k); !g.is_zero()) diff -= MultiPoly(g) * cols[k];
            for (const auto& p : diff.coords())
                if (!p.is_zero()) out.equations.push_back(p);
        }
    normalize(out.equations);
    return out;
}

WitnessResult find_transform(const ParamC& from, const ParamC& to) {
    if (from.family() != to.family()) throw FamilyMismatch("parameters belong to different families");
    if (from == to) {
        WitnessResult out;
        out.status = WitnessResult::Status::Found;
        out.transform = AdaptedTransform::identity(from.family());
        return out;
    }
    return Search(from, to).run(transform_equations(from, to).equations);
}

WitnessResult witness_isomorphism(const Classifier& classifier, const ParamC& from, const ParamC& to) {
    if (classifier.isomorphic(from, to) != Verdict::Yes)
        throw NotIsomorphic(from.to_string() + " and " + to.to_string() + " are not known to be isomorphic");
    return find_transform(from, to);
}

}  // namespace flc
