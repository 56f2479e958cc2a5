#include <catch_amalgamated.hpp>

#include <climits>
#include <random>

#include "flc/errors.hpp"
#include "flc/gauss_rat.hpp"
#include "flc/multi_poly.hpp"
#include "flc/rational_function.hpp"

using namespace flc;

namespace {

// Reference model: a pair of GMP rationals with schoolbook complex arithmetic.
struct RefComplex {
    mpq_class re, im;
};
RefComplex ref_add(const RefComplex& a, const RefComplex& b) { return {a.re + b.re, a.im + b.im}; }
RefComplex ref_mul(const RefComplex& a, const RefComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
bool same(const GaussRat& x, const RefComplex& r) {
    return x.re().to_mpq() == r.re && x.im().to_mpq() == r.im;
}

mpq_class random_mpq(std::mt19937_64& rng) {
    // Mix tiny values with values near the 64-bit boundary.
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<std::int64_t> small(-9, 9);
    std::uniform_int_distribution<std::int64_t> huge(INT64_MAX / 4, INT64_MAX);
    auto pick = [&]() -> mpz_class {
        switch (kind(rng)) {
            case 0: return mpz_class(0);
            case 3: {
                mpz_class z;
                mpz_set_si(z.get_mpz_t(), huge(rng));
                return small(rng) < 0 ? mpz_class(-z) : z;
            }
            default: return mpz_class(static_cast<long>(small(rng)));
        }
    };
    mpz_class num = pick();
    mpz_class den = pick();
    if (den == 0) den = 1;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::pair<GaussRat, RefComplex> random_pair(std::mt19937_64& rng) {
    RefComplex r{random_mpq(rng), random_mpq(rng)};
    return {GaussRat(Rational(r.re), Rational(r.im)), r};
}

MultiPoly random_poly(std::mt19937_64& rng, const MultiPoly::Variables& vars) {
    std::uniform_int_distribution<int> nterms(0, 4), exp(0, 2), coef(-3, 3);
    MultiPoly p;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        MultiPoly term(GaussRat(Rational(coef(rng)), Rational(coef(rng))));
        for (std::size_t v = 0; v < vars->size(); ++v)
            term *= MultiPoly::variable(vars, v).pow(static_cast<unsigned>(exp(rng)));
        p += term;
    }
    return p;
}

}  // namespace

TEST_CASE("Gaussian rational arithmetic matches direct complex arithmetic", "[exact_core]") {
    CHECK(GaussRat::parse("1+2i") * GaussRat::parse("3-i") == GaussRat::parse("5+5i"));
    const GaussRat x = GaussRat::parse("7/3-2/5i");
    CHECK((x / x).is_one());
    CHECK(GaussRat::parse("1/2+1/3i") + GaussRat::parse("1/2-1/3i") == GaussRat(1));
    CHECK(GaussRat::i() * GaussRat::i() == GaussRat(-1));
}

TEST_CASE("division by zero is reported", "[exact_core]") {
    CHECK_THROWS_AS(GaussRat(1) / GaussRat(0), DivisionByZero);
    CHECK_THROWS_AS(GaussRat().inverse(), DivisionByZero);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("textual form round-trips", "[exact_core]") {
    for (const char* s : {"0", "2i", "-i", "i", "1/2-3/4i", "-7", "1+i", "-1/2+5/3i", "3/4i"}) {
        CHECK(GaussRat::parse(s).to_string() == s);
    }
    CHECK(GaussRat::parse("6/4").to_string() == "3/2");
    CHECK(GaussRat::parse(" 2 - 4/2i ").to_string() == "2-2i");
    CHECK(GaussRat::parse("+i").to_string() == "i");
    for (const char* bad : {"", "1/0", "abc", "1//2", "2+", "1/-2", "i2"}) {
        CHECK_THROWS_AS(GaussRat::parse(bad), ParseError);
    }
}

TEST_CASE("canonical form across the inline and big representations", "[exact_core]") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).to_string() == "-3/2");
    const Rational big_one = Rational(INT64_MAX) + Rational(1);
    CHECK_FALSE(big_one.is_small());
    const Rational back = big_one - Rational(1);
    CHECK(back.is_small());
    CHECK(back == Rational(INT64_MAX));
    CHECK(Rational(INT64_MIN).to_string() == "-9223372036854775808");
    CHECK(Rational::parse("123456789012345678901234567890/10").to_string() ==
          "12345678901234567890123456789");
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("field axioms on random triples", "[exact_core][property]") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [a, ra] = random_pair(rng);
        const auto [b, rb] = random_pair(rng);
        const auto [c, rc] = random_pair(rng);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(same(a * b, ref_mul(ra, rb)));
        REQUIRE(same(a + b, ref_add(ra, rb)));
        if (!b.is_zero()) REQUIRE((a / b) * b == a);
        REQUIRE(a - a == GaussRat());
        REQUIRE(GaussRat::parse(a.to_string()) == a);
    }
}

TEST_CASE("polynomial evaluation", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"x00", "x01", "x11"});
    const MultiPoly x00 = MultiPoly::variable(vars, "x00");
    const MultiPoly x01 = MultiPoly::variable(vars, "x01");
    const MultiPoly x11 = MultiPoly::variable(vars, "x11");
    const MultiPoly chi1 = MultiPoly(4) * x00 * x11 - x01 * x01;
    const std::map<std::string, GaussRat, std::less<>> at{{"x00", 1}, {"x11", 1}, {"x01", 0}};
    CHECK(chi1.eval(at) == GaussRat(4));
    CHECK(MultiPoly().eval(at).is_zero());
    CHECK_THROWS_AS(chi1.eval({{"x00", 1}}), MissingVariable);

    auto xy = MultiPoly::make_variables({"x", "y"});
    const MultiPoly p = MultiPoly::variable(xy, "x") * MultiPoly::variable(xy, "y");
    CHECK(p.eval({{"x", GaussRat::parse("2+i")}, {"y", GaussRat::parse("2-i")}}) == GaussRat(5));
}

TEST_CASE("zero coefficients are never stored", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"a", "b"});
    const MultiPoly a = MultiPoly::variable(vars, "a");
    const MultiPoly b = MultiPoly::variable(vars, "b");
    const MultiPoly z = (a + b) - b - a;
    CHECK(z.is_zero());
    CHECK(z.terms().empty());
    CHECK(((a + b) * (a - b)).terms().size() == 2);
}

TEST_CASE("graded lexicographic order", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"a", "b", "c"});
    const MultiPoly a = MultiPoly::variable(vars, "a");
    const MultiPoly b = MultiPoly::variable(vars, "b");
    const MultiPoly c = MultiPoly::variable(vars, "c");
    CHECK((a * b + a * a + c * c * c).to_string() == "c^3 + a^2 + a*b");
    CHECK((b + a).to_string() == "a + b");
    CHECK((b * c - a * c + MultiPoly(2)).to_string() == "-a*c + b*c + 2");
}

TEST_CASE("ring laws and evaluation homomorphism on random polynomials",
          "[exact_core][property]") {
    std::mt19937_64 rng(7);
    auto vars = MultiPoly::make_variables({"u", "v", "w"});
    std::uniform_int_distribution<int> small(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const MultiPoly p = random_poly(rng, vars);
        const MultiPoly q = random_poly(rng, vars);
        const MultiPoly r = random_poly(rng, vars);
        REQUIRE(p + q == q + p);
        REQUIRE(p * q == q * p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
        const std::vector<GaussRat> at{GaussRat(Rational(small(rng)), Rational(small(rng))),
                                       GaussRat(Rational(small(rng), 3)), GaussRat(small(rng))};
        REQUIRE((p * q).eval(at) == p.eval(at) * q.eval(at));
        REQUIRE((p + q).eval(at) == p.eval(at) + q.eval(at));
        if (!q.is_zero()) {
            const auto quotient = (p * q).divide_exact(q);
            REQUIRE(quotient.has_value());
            REQUIRE(*quotient == p);
        }
    }
}

TEST_CASE("exact division detects non-divisibility", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"x", "y"});
    const MultiPoly x = MultiPoly::variable(vars, "x");
    const MultiPoly y = MultiPoly::variable(vars, "y");
    CHECK_FALSE((x * x + y).divide_exact(x).has_value());
    CHECK(*(x * x * y - y).divide_exact(x - MultiPoly(1)) == x * y + y);
}

TEST_CASE("substitution", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"x", "y"});
    const MultiPoly x = MultiPoly::variable(vars, "x");
    const MultiPoly y = MultiPoly::variable(vars, "y");
    CHECK((x * x * y).substitute(0, y + MultiPoly(1)) == (y + MultiPoly(1)).pow(2) * y);
}

TEST_CASE("expression parsing", "[exact_core]") {
    auto vars = MultiPoly::make_variables({"c00", "c01", "c11", "c12", "c13", "c14", "c23"});
    const Shorthands sh{{"chi1", "4*x00*x11-x01^2"}};
    const RationalFunction f1 = parse_rational_function("(x23/x11)^8*chi1^3", vars, sh);
    const std::vector<GaussRat> rep{1, 0, 1, 1, 0, 0, 1};
    CHECK(f1.eval(rep) == GaussRat(64));
    const RationalFunction f = parse_rational_function("x13^3/(x11*x23^2)", vars, sh);
    CHECK(f.eval(std::vector<GaussRat>{0, 0, 1, 0, 5, 0, 1}) == GaussRat(125));
    CHECK(parse_rational_function("c12^-2", vars).eval(std::vector<GaussRat>{0, 0, 0, 2, 0, 0, 0}) ==
          GaussRat(Rational(1, 4)));
    CHECK(parse_polynomial("2*i*c00 - (c01)", vars).to_string() == "(2i)*c00 - c01");
    CHECK_THROWS_AS(f.eval(std::vector<GaussRat>{0, 0, 0, 0, 5, 0, 1}), DenominatorVanished);
    CHECK_THROWS_AS(parse_rational_function("c99", vars), ParseError);
    CHECK_THROWS_AS(parse_rational_function("c00/0", vars), ParseError);
    CHECK_THROWS_AS(parse_rational_function("(c00", vars), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/c00", vars), ParseError);
}

TEST_CASE("exact roots in the Gaussian rationals", "[exact_core]") {
    auto roots = exact_roots(GaussRat(16), 4);
    CHECK(roots.roots.size() == 4);
    for (const auto& r : roots.roots) CHECK(r.pow(4) == GaussRat(16));
    CHECK(exact_roots(GaussRat(2), 2).roots.empty());
    CHECK(exact_roots(GaussRat(2), 2).exhaustive);
    const auto half_i = exact_roots(GaussRat(Rational(-1, 4)), 2);
    REQUIRE(half_i.roots.size() == 2);
    for (const auto& r : half_i.roots) CHECK(r * r == GaussRat(Rational(-1, 4)));
    const GaussRat z = GaussRat::parse("3/2-5/7i");
    const auto back = exact_roots(z.pow(5), 5);
    CHECK(std::find(back.roots.begin(), back.roots.end(), z) != back.roots.end());
}
