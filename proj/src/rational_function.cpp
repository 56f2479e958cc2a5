#include "flc/rational_function.hpp"

#include <algorithm>
#include <cctype>

#include "flc/errors.hpp"

namespace flc {
namespace {

RationalFunction normalized(MultiPoly num, MultiPoly den) {
    if (den.is_zero()) throw DivisionByZero();
    if (den.is_constant()) {
        const GaussRat inv = den.constant_term().inverse();
        return {num * MultiPoly(inv), MultiPoly(GaussRat(1))};
    }
    return {std::move(num), std::move(den)};
}

class Parser {
public:
    Parser(std::string_view text, const MultiPoly::Variables& vars, const Shorthands& shorthands,
           int depth)
        : text_(text), vars_(vars), shorthands_(shorthands), depth_(depth) {}

    RationalFunction parse() {
        RationalFunction r = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("cannot parse '" + std::string(text_) + "' at offset " +
                         std::to_string(pos_) + ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expression() {
        RationalFunction acc = term();
        for (;;) {
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else return acc;
        }
    }

    RationalFunction term() {
        RationalFunction acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                RationalFunction d = unary();
                if (d.num.is_zero()) fail("division by zero");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RationalFunction power() {
        RationalFunction base = primary();
        if (!accept('^')) return base;
        skip_space();
        bool negative = false;
        if (accept('-')) negative = true;
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        if (pos_ - start > 4) fail("exponent too large");
        const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (negative && base.num.is_zero()) fail("zero raised to a negative power");
        return base.pow(negative ? -e : e);
    }

    RationalFunction primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            RationalFunction inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const Rational value = Rational::parse(text_.substr(start, pos_ - start));
            return {MultiPoly(GaussRat(value)), MultiPoly(GaussRat(1))};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return identifier(text_.substr(start, pos_ - start));
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    RationalFunction identifier(std::string_view name) {
        const RationalFunction one{MultiPoly(GaussRat(1)), MultiPoly(GaussRat(1))};
        if (name == "i") return {MultiPoly(GaussRat::i()), one.den};
        if (vars_) {
            if (std::find(vars_->begin(), vars_->end(), name) != vars_->end())
                return {MultiPoly::variable(vars_, name), one.den};
            if (name.size() > 1 && name[0] == 'x') {
                const std::string alias = "c" + std::string(name.substr(1));
                if (std::find(vars_->begin(), vars_->end(), alias) != vars_->end())
                    return {MultiPoly::variable(vars_, alias), one.den};
            }
        }
        if (const auto it = shorthands_.find(name); it != shorthands_.end()) {
            if (depth_ > 8) fail("shorthand nesting too deep");
            return Parser(it->second, vars_, shorthands_, depth_ + 1).parse();
        }
        fail("unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    const MultiPoly::Variables& vars_;
    const Shorthands& shorthands_;
    int depth_;
    std::size_t pos_ = 0;
};

}  // namespace

GaussRat RationalFunction::eval(std::span<const GaussRat> values) const {
    const GaussRat d = den.eval(values);
    if (d.is_zero()) throw DenominatorVanished("denominator " + den.to_string() + " vanishes");
    return num.eval(values) / d;
}

std::string RationalFunction::to_string() const {
    if (den.is_constant() && den.constant_term().is_one()) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den == b.den) return normalized(a.num + b.num, a.den);
    return normalized(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return normalized(a.num * b.num, a.den * b.den);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num.is_zero()) throw DivisionByZero();
    return normalized(a.num * b.den, a.den * b.num);
}

RationalFunction RationalFunction::pow(int exponent) const {
    if (exponent < 0) {
        if (num.is_zero()) throw DivisionByZero();
        return normalized(den.pow(static_cast<unsigned>(-exponent)),
                          num.pow(static_cast<unsigned>(-exponent)));
    }
    return normalized(num.pow(static_cast<unsigned>(exponent)), den.pow(static_cast<unsigned>(exponent)));
}

RationalFunction parse_rational_function(std::string_view text, const MultiPoly::Variables& vars,
                                         const Shorthands& shorthands) {
    return Parser(text, vars, shorthands, 0).parse();
}

MultiPoly parse_polynomial(std::string_view text, const MultiPoly::Variables& vars,
                           const Shorthands& shorthands) {
    RationalFunction r = parse_rational_function(text, vars, shorthands);
    if (!r.den.is_constant())
        throw ParseError("'" + std::string(text) + "' is not a polynomial");
    return r.num;
}

}  // namespace flc
