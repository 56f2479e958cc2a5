#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flc/gauss_rat.hpp"

namespace flc {

/// Exponent vector over a declared variable order. Trailing zero exponents
/// are not stored, so structurally equal monomials compare equal regardless
/// of how many variables the ambient ring declares.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exponents);
    static Monomial variable(std::size_t index, std::uint32_t power = 1);

    [[nodiscard]] std::uint32_t degree() const noexcept { return degree_; }
    [[nodiscard]] std::uint32_t exponent(std::size_t index) const noexcept {
        return index < exps_.size() ? exps_[index] : 0;
    }
    /// One past the highest variable index with a nonzero exponent.
    [[nodiscard]] std::size_t width() const noexcept { return exps_.size(); }
    [[nodiscard]] bool is_one() const noexcept { return exps_.empty(); }

    [[nodiscard]] bool divides(const Monomial& other) const noexcept;
    /// Requires divisor.divides(*this).
    [[nodiscard]] Monomial quotient(const Monomial& divisor) const;
    friend Monomial operator*(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Graded lexicographic order, variable 0 most significant.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    void trim();
    std::vector<std::uint32_t> exps_;
    std::uint32_t degree_ = 0;
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
///
/// Terms are kept in descending graded-lex order and zero coefficients are
/// never stored. A polynomial created without a variable list is a constant
/// and combines with any other polynomial.
class MultiPoly {
public:
    using Variables = std::shared_ptr<const std::vector<std::string>>;
    using Terms = std::map<Monomial, GaussRat, std::greater<>>;

    MultiPoly() = default;
    MultiPoly(GaussRat constant);       // NOLINT(google-explicit-constructor)
    MultiPoly(std::int64_t constant);   // NOLINT(google-explicit-constructor)
    MultiPoly(Variables vars, Terms terms);

    static Variables make_variables(std::vector<std::string> names);
    static MultiPoly variable(const Variables& vars, std::size_t index);
    /// Looks the name up in `vars`; throws MissingVariable if absent.
    static MultiPoly variable(const Variables& vars, std::string_view name);

    [[nodiscard]] const Variables& variables() const noexcept { return vars_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }

    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept;
    /// Constant term (zero if absent).
    [[nodiscard]] GaussRat constant_term() const;
    [[nodiscard]] std::uint32_t total_degree() const noexcept;
    /// Requires !is_zero().
    [[nodiscard]] const Monomial& leading_monomial() const;
    [[nodiscard]] const GaussRat& leading_coefficient() const;
    /// Indices of variables that occur with a nonzero exponent.
    [[nodiscard]] std::vector<std::size_t> occurring_variables() const;

    /// Scaled so that the leading coefficient is 1; zero stays zero.
    [[nodiscard]] MultiPoly monic() const;
    [[nodiscard]] MultiPoly pow(unsigned exponent) const;
    /// Replaces variable `index` by `value` everywhere.
    [[nodiscard]] MultiPoly substitute(std::size_t index, const MultiPoly& value) const;
    /// Returns q with q * divisor == *this, or nothing if divisor does not divide.
    [[nodiscard]] std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

    /// Evaluates at named values. Throws MissingVariable for an occurring
    /// variable absent from the assignment.
    [[nodiscard]] GaussRat eval(const std::map<std::string, GaussRat, std::less<>>& assignment) const;
    /// Evaluates with values[i] bound to variable i.
    [[nodiscard]] GaussRat eval(std::span<const GaussRat> values) const;

    [[nodiscard]] std::string to_string() const;

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator+=(const MultiPoly& b);
    MultiPoly& operator-=(const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

private:
    static Variables common(const Variables& a, const Variables& b);
    void add_term(const Monomial& m, const GaussRat& c);

    Variables vars_;
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace flc
