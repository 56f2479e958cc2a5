#include "flc/gauss_rat.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "flc/errors.hpp"

namespace flc {

GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return GaussRat(a.re_ + b.re_);
    return {a.re_ + b.re_, a.im_ + b.im_};
}

GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return GaussRat(a.re_ - b.re_);
    return {a.re_ - b.re_, a.im_ - b.im_};
}

GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    if (a.im_.is_zero()) {
        if (b.im_.is_zero()) return GaussRat(a.re_ * b.re_);
        return {a.re_ * b.re_, a.re_ * b.im_};
    }
    if (b.im_.is_zero()) return {a.re_ * b.re_, a.im_ * b.re_};
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    if (b.im_.is_zero()) {
        if (b.re_.is_zero()) throw DivisionByZero();
        return {a.re_ / b.re_, a.im_ / b.re_};
    }
    return a * b.inverse();
}

GaussRat GaussRat::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (im_.is_zero()) return GaussRat(re_.inverse());
    const Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussRat GaussRat::pow(int exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    GaussRat result(1);
    GaussRat base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

namespace {

std::string imag_text(const Rational& im) {
    if (im.is_one()) return "i";
    if (im == Rational(-1)) return "-i";
    return im.to_string() + "i";
}

}  // namespace

std::string GaussRat::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    if (re_.is_zero()) return imag_text(im_);
    std::string out = re_.to_string();
    if (im_.sign() > 0) out += '+';
    return out + imag_text(im_);
}

GaussRat GaussRat::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw ParseError("empty number");
    try {
        if (s.back() != 'i') return GaussRat(Rational::parse(s));
        s.pop_back();
        // Split at the last sign that is not the leading one.
        std::size_t split = std::string::npos;
        for (std::size_t p = s.size(); p-- > 1;) {
            if (s[p] == '+' || s[p] == '-') {
                split = p;
                break;
            }
        }
        std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
        std::string im_text = split == std::string::npos ? s : s.substr(split);
        if (im_text.empty() || im_text == "+") im_text = "1";
        else if (im_text == "-") im_text = "-1";
        Rational re = re_text.empty() ? Rational(0) : Rational::parse(re_text);
        return {std::move(re), Rational::parse(im_text)};
    } catch (const ParseError&) {
        throw ParseError("invalid Gaussian rational '" + std::string(text) + "'");
    }
}

RootSearch exact_roots(const GaussRat& a, int k) {
    RootSearch out;
    if (k < 1) throw std::invalid_argument("root order must be positive");
    if (a.is_zero()) {
        out.roots.emplace_back(0);
        return out;
    }
    // Write a = alpha / d with alpha a Gaussian integer. Any root has the form
    // y / d with y a Gaussian integer and y^k = alpha * d^(k-1).
    const mpz_class d = lcm(a.re().denominator(), a.im().denominator());
    const mpz_class alpha_re = a.re().numerator() * (d / a.re().denominator());
    const mpz_class alpha_im = a.im().numerator() * (d / a.im().denominator());
    const GaussRat beta = GaussRat(Rational(mpq_class(alpha_re)), Rational(mpq_class(alpha_im))) *
                          GaussRat(Rational(mpq_class(d))).pow(k - 1);

    const long double br = beta.re().to_double();
    const long double bi = beta.im().to_double();
    const long double mag = std::pow(std::hypot(br, bi), 1.0L / k);
    if (!std::isfinite(mag) || mag > 1e12L) {
        out.exhaustive = false;
        return out;
    }
    const long double theta = std::atan2(bi, br);
    const GaussRat inv_d = GaussRat(Rational(mpq_class(d))).inverse();
    for (int j = 0; j < k; ++j) {
        const long double ang = (theta + 2 * std::numbers::pi_v<long double> * j) / k;
        const auto u = static_cast<std::int64_t>(std::llround(mag * std::cos(ang)));
        const auto v = static_cast<std::int64_t>(std::llround(mag * std::sin(ang)));
        const GaussRat y{Rational(u), Rational(v)};
        if (y.pow(k) == beta) {
            GaussRat root = y * inv_d;
            bool seen = false;
            for (const auto& r : out.roots) seen = seen || r == root;
            if (!seen) out.roots.push_back(std::move(root));
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const GaussRat& x) { return os << x.to_string(); }

}  // namespace flc
