#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "flc/multi_poly.hpp"

namespace flc {

/// Quotient of two polynomials, kept unreduced (no gcd cancellation).
struct RationalFunction {
    MultiPoly num{0};
    MultiPoly den{1};

    /// Throws DenominatorVanished when the denominator evaluates to zero.
    [[nodiscard]] GaussRat eval(std::span<const GaussRat> values) const;
    [[nodiscard]] std::string to_string() const;

    RationalFunction operator-() const { return {-num, den}; }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    /// Throws DivisionByZero if b is the zero function.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    [[nodiscard]] RationalFunction pow(int exponent) const;
};

/// Named polynomial abbreviations that may appear in expression text.
using Shorthands = std::map<std::string, std::string, std::less<>>;

/// Parses arithmetic text over `vars` with + - * / ^ (integer exponents) and
/// parentheses. Numbers are decimal integers; "i" is the imaginary unit.
/// An identifier "xNN" is accepted as an alias of "cNN" when only the latter
/// is declared. Shorthand names expand to their (parenthesized) definitions.
/// Throws ParseError on malformed input or unknown identifiers.
RationalFunction parse_rational_function(std::string_view text, const MultiPoly::Variables& vars,
                                         const Shorthands& shorthands = {});

/// Same grammar, but the result must be a polynomial (constant denominator).
MultiPoly parse_polynomial(std::string_view text, const MultiPoly::Variables& vars,
                           const Shorthands& shorthands = {});

}  // namespace flc
