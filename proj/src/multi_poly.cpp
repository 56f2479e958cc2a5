#include "flc/multi_poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "flc/errors.hpp"

namespace flc {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) { trim(); }

Monomial Monomial::variable(std::size_t index, std::uint32_t power) {
    std::vector<std::uint32_t> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
}

void Monomial::trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    degree_ = 0;
    for (auto e : exps_) degree_ += e;
}

bool Monomial::divides(const Monomial& other) const noexcept {
    if (exps_.size() > other.exps_.size()) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
    std::vector<std::uint32_t> e = exps_;
    for (std::size_t i = 0; i < divisor.exps_.size(); ++i) e[i] -= divisor.exps_[i];
    return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(std::max(a.exps_.size(), b.exps_.size()), 0);
    for (std::size_t i = 0; i < a.exps_.size(); ++i) e[i] += a.exps_[i];
    for (std::size_t i = 0; i < b.exps_.size(); ++i) e[i] += b.exps_[i];
    Monomial m;
    m.exps_ = std::move(e);
    m.degree_ = a.degree_ + b.degree_;
    return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = a.exponent(i);
        const auto y = b.exponent(i);
        if (x != y) return x <=> y;
    }
    return std::strong_ordering::equal;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(GaussRat constant) {
    if (!constant.is_zero()) terms_.emplace(Monomial(), std::move(constant));
}

MultiPoly::MultiPoly(std::int64_t constant) : MultiPoly(GaussRat(constant)) {}

MultiPoly::MultiPoly(Variables vars, Terms terms) : vars_(std::move(vars)) {
    for (auto& [m, c] : terms)
        if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

MultiPoly::Variables MultiPoly::make_variables(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

MultiPoly MultiPoly::variable(const Variables& vars, std::size_t index) {
    if (!vars || index >= vars->size()) throw MissingVariable("variable index out of range");
    Terms t;
    t.emplace(Monomial::variable(index), GaussRat(1));
    return MultiPoly(vars, std::move(t));
}

MultiPoly MultiPoly::variable(const Variables& vars, std::string_view name) {
    if (vars) {
        const auto it = std::find(vars->begin(), vars->end(), name);
        if (it != vars->end()) return variable(vars, static_cast<std::size_t>(it - vars->begin()));
    }
    throw MissingVariable("unknown variable '" + std::string(name) + "'");
}

MultiPoly::Variables MultiPoly::common(const Variables& a, const Variables& b) {
    if (!a) return b;
    if (!b || a == b || *a == *b) return a;
    throw DimensionMismatch("polynomials over different variable sets");
}

bool MultiPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussRat MultiPoly::constant_term() const {
    const auto it = terms_.find(Monomial());
    return it == terms_.end() ? GaussRat() : it->second;
}

std::uint32_t MultiPoly::total_degree() const noexcept {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

const Monomial& MultiPoly::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

const GaussRat& MultiPoly::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

std::vector<std::size_t> MultiPoly::occurring_variables() const {
    std::vector<std::size_t> out;
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < m.width(); ++i)
            if (m.exponent(i) > 0 && std::find(out.begin(), out.end(), i) == out.end())
                out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

void MultiPoly::add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
    vars_ = common(vars_, b.vars_);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& b) {
    vars_ = common(vars_, b.vars_);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r += b;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r -= b;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    r.vars_ = MultiPoly::common(a.vars_, b.vars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::monic() const {
    if (is_zero()) return *this;
    const GaussRat inv = leading_coefficient().inverse();
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c *= inv;
    return r;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
    MultiPoly result(GaussRat(1));
    result.vars_ = vars_;
    MultiPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::substitute(std::size_t index, const MultiPoly& value) const {
    MultiPoly result;
    result.vars_ = common(vars_, value.vars_);
    for (const auto& [m, c] : terms_) {
        const std::uint32_t e = m.exponent(index);
        if (e == 0) {
            result.add_term(m, c);
            continue;
        }
        std::vector<std::uint32_t> rest(m.width());
        for (std::size_t i = 0; i < m.width(); ++i) rest[i] = i == index ? 0 : m.exponent(i);
        Terms single;
        single.emplace(Monomial(std::move(rest)), c);
        result += MultiPoly(result.vars_, std::move(single)) * value.pow(e);
    }
    return result;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero();
    MultiPoly remainder = *this;
    MultiPoly quotient;
    quotient.vars_ = common(vars_, divisor.vars_);
    const Monomial& lm = divisor.leading_monomial();
    const GaussRat lc_inv = divisor.leading_coefficient().inverse();
    while (!remainder.is_zero()) {
        const Monomial& rm = remainder.leading_monomial();
        if (!lm.divides(rm)) return std::nullopt;
        Terms t;
        t.emplace(rm.quotient(lm), remainder.leading_coefficient() * lc_inv);
        MultiPoly step(quotient.vars_, std::move(t));
        remainder -= step * divisor;
        quotient += step;
    }
    return quotient;
}

GaussRat MultiPoly::eval(const std::map<std::string, GaussRat, std::less<>>& assignment) const {
    std::vector<GaussRat> values;
    for (std::size_t idx : occurring_variables()) {
        const std::string& name = vars_->at(idx);
        const auto it = assignment.find(name);
        if (it == assignment.end()) throw MissingVariable("no value for variable '" + name + "'");
        if (values.size() <= idx) values.resize(idx + 1);
        values[idx] = it->second;
    }
    return eval(values);
}

GaussRat MultiPoly::eval(std::span<const GaussRat> values) const {
    GaussRat sum;
    for (const auto& [m, c] : terms_) {
        if (m.width() > values.size())
            throw MissingVariable("no value for variable index " + std::to_string(m.width() - 1));
        GaussRat term = c;
        for (std::size_t i = 0; i < m.width() && !term.is_zero(); ++i) {
            const auto e = m.exponent(i);
            if (e == 0) continue;
            term *= e == 1 ? values[i] : values[i].pow(static_cast<int>(e));
        }
        sum += term;
    }
    return sum;
}

namespace {

std::string variable_name(const MultiPoly::Variables& vars, std::size_t i) {
    if (vars && i < vars->size()) return (*vars)[i];
    return "v" + std::to_string(i);
}

}  // namespace

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        GaussRat coeff = c;
        const bool negative = coeff.is_real() && coeff.re().sign() < 0;
        if (negative) coeff = -coeff;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < m.width(); ++i) {
            const auto e = m.exponent(i);
            if (e == 0) continue;
            if (!factors.empty()) factors += '*';
            factors += variable_name(vars_, i);
            if (e > 1) factors += '^' + std::to_string(e);
        }
        const bool unit = coeff.is_one();
        if (!unit || factors.empty()) {
            if (coeff.is_real()) os << coeff;
            else os << '(' << coeff << ')';
            if (!factors.empty()) os << '*';
        }
        os << factors;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace flc
