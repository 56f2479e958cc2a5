#include "flc/rational.hpp"

#include <climits>
#include <functional>
#include <numeric>
#include <ostream>

#include "flc/errors.hpp"

namespace flc {
namespace {

constexpr std::int64_t kMin = INT64_MIN;
__extension__ using Int128 = __int128;

bool mul_ovf(std::int64_t a, std::int64_t b, std::int64_t* out) {
    return __builtin_mul_overflow(a, b, out) || *out == kMin;
}
bool add_ovf(std::int64_t a, std::int64_t b, std::int64_t* out) {
    return __builtin_add_overflow(a, b, out) || *out == kMin;
}

// a/b + c/d with b, d > 0 and both fractions reduced.
bool add_small(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t& rn,
               std::int64_t& rd) {
    const std::int64_t g = std::gcd(b, d);
    const std::int64_t b1 = b / g;
    const std::int64_t d1 = d / g;
    std::int64_t t1 = 0, t2 = 0, t = 0;
    if (mul_ovf(a, d1, &t1) || mul_ovf(c, b1, &t2) || add_ovf(t1, t2, &t)) return false;
    if (t == 0) {
        rn = 0;
        rd = 1;
        return true;
    }
    const std::int64_t g2 = std::gcd(t, g);
    std::int64_t den = 0;
    if (mul_ovf(b1, d / g2, &den)) return false;
    rn = t / g2;
    rd = den;
    return true;
}

bool mul_small(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t& rn,
               std::int64_t& rd) {
    if (a == 0 || c == 0) {
        rn = 0;
        rd = 1;
        return true;
    }
    const std::int64_t g1 = std::gcd(a, d);
    const std::int64_t g2 = std::gcd(c, b);
    std::int64_t n = 0, den = 0;
    if (mul_ovf(a / g1, c / g2, &n) || mul_ovf(b / g2, d / g1, &den)) return false;
    rn = n;
    rd = den;
    return true;
}

bool valid_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(std::int64_t value) {
    if (value == kMin) {
        *this = from_big(mpq_class(mpz_class(std::to_string(value))));
        return;
    }
    num_ = value;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DivisionByZero();
    if (num == kMin || den == kMin) {
        *this = from_big(mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den))));
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational::Rational(const mpq_class& value) { *this = from_big(value); }

Rational Rational::from_big(mpq_class value) {
    value.canonicalize();
    Rational r;
    const mpz_class& n = value.get_num();
    const mpz_class& d = value.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin) {
        r.num_ = n.get_si();
        r.den_ = d.get_si();
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(value));
    return r;
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    const std::string_view den_text =
        slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer_text(num_text) || !valid_integer_text(den_text) || den_text[0] == '-' ||
        den_text[0] == '+')
        throw ParseError("invalid rational literal '" + std::string(text) + "'");
    mpz_class den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return from_big(mpq_class(parse_integer(num_text), den));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(num_); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(den_); }

std::string Rational::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
    return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (big_) return from_big(1 / *big_);
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::operator-() const {
    if (big_) return from_big(-*big_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        Rational r;
        if (add_small(a.num_, a.den_, b.num_, b.den_, r.num_, r.den_)) return r;
    }
    return Rational::from_big(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        Rational r;
        if (mul_small(a.num_, a.den_, b.num_, b.den_, r.num_, r.den_)) return r;
    }
    return Rational::from_big(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) noexcept {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        const Int128 lhs = static_cast<Int128>(a.num_) * b.den_;
        const Int128 rhs = static_cast<Int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rational::hash() const noexcept {
    if (!big_) {
        const std::size_t h = std::hash<std::int64_t>{}(num_);
        return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
    return std::hash<std::string>{}(big_->get_str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace flc
