#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flc/rational.hpp"

namespace flc {

/// Element of the Gaussian rationals Q(i): re + im*i with exact rational parts.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(std::int64_t value) : re_(value) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return {Rational(0), Rational(1)}; }

    /// Parses the "p/q+r/si" text form. Either part may be omitted, and a
    /// unit imaginary coefficient may be written as "i" / "-i".
    static GaussRat parse(std::string_view text);

    [[nodiscard]] const Rational& re() const noexcept { return re_; }
    [[nodiscard]] const Rational& im() const noexcept { return im_; }

    [[nodiscard]] bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    [[nodiscard]] bool is_one() const noexcept { return re_.is_one() && im_.is_zero(); }
    [[nodiscard]] bool is_real() const noexcept { return im_.is_zero(); }

    [[nodiscard]] GaussRat conj() const { return {re_, -im_}; }
    /// re^2 + im^2.
    [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }
    [[nodiscard]] GaussRat inverse() const;
    /// Integer power; negative exponents invert first.
    [[nodiscard]] GaussRat pow(int exponent) const;

    [[nodiscard]] std::string to_string() const;

    GaussRat operator-() const { return {-re_, -im_}; }
    friend GaussRat operator+(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b);
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b);

    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) noexcept {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    [[nodiscard]] std::size_t hash() const noexcept {
        return re_.hash() * 31 + im_.hash();
    }

private:
    Rational re_;
    Rational im_;
};

/// All x in Q(i) with x^k = a (k >= 1). Empty when no such root exists in
/// Q(i), or when the magnitudes exceed what the search supports (reported
/// through `exhaustive`).
struct RootSearch {
    std::vector<GaussRat> roots;
    bool exhaustive = true;
};
RootSearch exact_roots(const GaussRat& a, int k);

std::ostream& operator<<(std::ostream& os, const GaussRat& x);

}  // namespace flc
