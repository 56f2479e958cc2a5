#include <catch_amalgamated.hpp>

#include <random>

#include "flc/classifier.hpp"
#include "flc/errors.hpp"
#include "flc/verify.hpp"
#include "flc/witness.hpp"

using namespace flc;

namespace {

const Classifier& classifier() {
    static const Classifier c = Classifier::load(FLC_DATA_DIR "/classification.json");
    return c;
}

const ErrataAllowlist& errata() {
    static const ErrataAllowlist a = ErrataAllowlist::load(FLC_DATA_DIR "/errata_allowlist.json");
    return a;
}

bool known_defect(Family f, int subset) {
    const SubsetRecord& s = classifier().subset(f, subset);
    return errata().contains(s.table, s.index, "orbit_invariance") ||
           errata().contains(s.table, s.index, "denominator_safety");
}

ParamC c7(std::initializer_list<int> v) { return ParamC(Family::Dim7, std::vector<GaussRat>(v.begin(), v.end())); }
ParamC c8(std::initializer_list<int> v) { return ParamC(Family::Dim8, std::vector<GaussRat>(v.begin(), v.end())); }

GaussRat pick(std::mt19937_64& rng, bool nonzero = false) {
    static const GaussRat pool[] = {GaussRat(0),  GaussRat(1),  GaussRat(-1), GaussRat(2),
                                    GaussRat(-2), GaussRat(Rational(1, 2)), GaussRat::i(), GaussRat(1, 1)};
    std::uniform_int_distribution<std::size_t> d(nonzero ? 1 : 0, std::size(pool) - 1);
    return pool[d(rng)];
}

AdaptedTransform random_t(std::mt19937_64& rng, const ParamC& c) {
    for (;;) {
        AdaptedTransform t = AdaptedTransform::identity(c.family());
        t.a0 = pick(rng, true);
        t.a1 = pick(rng);
        for (auto& b : t.b) b = pick(rng);
        t.b[0] = pick(rng, true);
        if (c.family() == Family::Dim7 || !(t.a0 + t.a1 * c.at("c34")).is_zero()) return t;
    }
}

// A parametric representative at random slot values that lands in its own
// admissible subset, or nothing after a few tries.
std::optional<ParamC> sample_rep(std::mt19937_64& rng, const SubsetRecord& s) {
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<GaussRat> slots(s.slot_names.size());
        for (auto& v : slots) v = pick(rng, true);
        const ParamC c = classifier().canonical_rep(s.family, s.index, slots);
        if (is_admissible(c) && classifier().satisfies(s, c) && classifier().matching_subsets(c).size() == 1)
            return c;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("chi values", "[classifier]") {
    const ParamC a = c7({1, 0, 1, 1, 0, 0, 1});
    CHECK(chi(1, a) == GaussRat(4));
    CHECK_THROWS_AS(chi(2, a), WrongFamily);
    CHECK_THROWS_AS(chi(5, a), ParseError);

    ParamC b(Family::Dim8);
    b.set("c00", GaussRat(1));
    b.set("c01", GaussRat(3));
    b.set("c11", GaussRat(2));
    b.set("c12", GaussRat(1));
    b.set("c23", GaussRat(-2));
    b.set("c13", GaussRat(5));
    b.set("c34", GaussRat(1));
    CHECK(chi(1, b) == GaussRat(8 - 9));
    CHECK(chi(2, b) == GaussRat(4 - 3));
    CHECK(chi(3, b) == GaussRat(3 - 1));
    CHECK(chi(4, b) == GaussRat(-2 + 5));
}

TEST_CASE("headline counts", "[classifier]") {
    CHECK(classifier().counts(Family::Dim7).single == 20);
    CHECK(classifier().counts(Family::Dim7).parametric == 10);
    CHECK(classifier().counts(Family::Dim8).single == 32);
    CHECK(classifier().counts(Family::Dim8).parametric == 41);
    CHECK(classifier().subsets(Family::Dim7).size() == 30);
    CHECK(classifier().subsets(Family::Dim8).size() == 73);
    CHECK(classifier().subset(Family::Dim8, 14).name() == "U8^14");
    CHECK_THROWS_AS(classifier().subset(Family::Dim7, 31), DataError);
}

TEST_CASE("subset lookup", "[classifier]") {
    CHECK(classifier().subset_of(c7({0, 1, 0, 0, 0, 0, 1})) == 6);
    CHECK(classifier().subset_of(c7({0, 0, 0, 0, 0, 0, 0})) == 30);
    CHECK(classifier().subset_of(c7({1, 0, 1, 1, 0, 0, 1})) == 1);
    CHECK(classifier().subset_of(c8({0, 0, 0, 0, 0, 0, 0, 0, 0, 0})) == 73);
    CHECK(classifier().subset_of(c8({1, 0, 0, 0, 1, 0, 0, 0, 0, 1})) == 14);
}

TEST_CASE("invariant values", "[classifier]") {
    const auto f = classifier().invariants_of(c7({1, 0, 1, 1, 0, 0, 1}));
    REQUIRE(f.size() == 2);
    CHECK(f[0] == GaussRat(64));
    CHECK(f[1] == GaussRat(1));

    for (int l : {1, 2, -3}) {
        const auto g = classifier().invariants_of(c7({0, 0, 1, 0, l, 0, 1}));
        REQUIRE(g.size() == 1);
        CHECK(g[0] == GaussRat(l * l * l));
    }
    CHECK(classifier().invariants_of(c7({0, 1, 0, 0, 0, 0, 1})).empty());

    // The invariant of the U7^1 pattern is not its first slot.
    const std::vector<GaussRat> slots{GaussRat(2), GaussRat(3)};
    const ParamC rep = classifier().canonical_rep(Family::Dim7, 1, slots);
    CHECK(classifier().invariants_of(rep)[0] == GaussRat(64 * 8));
}

TEST_CASE("canonical representatives", "[classifier]") {
    CHECK(classifier().canonical_rep(ClassLabel{Family::Dim7, 6, {}}) == c7({0, 1, 0, 0, 0, 0, 1}));
    CHECK(classifier().canonical_rep(ClassLabel{Family::Dim8, 14, {}}) == c8({1, 0, 0, 0, 1, 0, 0, 0, 0, 1}));
    CHECK(classifier().canonical_rep(ClassLabel{Family::Dim7, 30, {}}) == c7({0, 0, 0, 0, 0, 0, 0}));
    CHECK(classifier().canonical_rep(ClassLabel{Family::Dim7, 3, {GaussRat(5)}}) == c7({0, 0, 1, 0, 5, 0, 1}));
    CHECK_THROWS_AS(classifier().canonical_rep(ClassLabel{Family::Dim7, 6, {GaussRat(1)}}), ArityMismatch);
    CHECK_THROWS_AS(classifier().canonical_rep(ClassLabel{Family::Dim7, 1, {GaussRat(1)}}), ArityMismatch);

    const ClassLabel label = classifier().classify(c7({0, 0, 1, 0, 2, 0, 1}));
    CHECK(label.subset == 3);
    CHECK(label.invariant_values == std::vector<GaussRat>{GaussRat(8)});
}

TEST_CASE("isomorphism verdicts", "[classifier]") {
    const ParamC a = c7({0, 1, 0, 0, 0, 0, 1});
    CHECK(classifier().isomorphic(a, a) == Verdict::Yes);
    CHECK(classifier().isomorphic(a, c7({1, 0, 0, 0, 0, 0, 1})) == Verdict::No);
    CHECK(classifier().isomorphic(c7({0, 0, 1, 0, 1, 0, 1}), c7({0, 0, 1, 0, 2, 0, 1})) == Verdict::No);
    CHECK_THROWS_AS(classifier().isomorphic(a, c8({0, 0, 0, 0, 0, 0, 0, 0, 0, 0})), FamilyMismatch);
    CHECK(verdict_name(Verdict::Undecided) == "undecided");
}

TEST_CASE("images under the action are isomorphic", "[classifier][property]") {
    std::mt19937_64 rng(11);
    for (Family f : {Family::Dim7, Family::Dim8}) {
        for (int n = 0; n < 150; ++n) {
            ParamC c(f);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = pick(rng);
            if (f == Family::Dim8 && !c.at("c34").is_zero()) c.set("c23", GaussRat(-2) * c.at("c12"));
            const auto m = classifier().matching_subsets(c);
            if (m.size() != 1 || known_defect(f, m[0])) continue;
            const ParamC image = apply_adapted_direct(c, random_t(rng, c));
            INFO(c.to_string() << " -> " << image.to_string());
            CHECK(classifier().isomorphic(c, image) != Verdict::No);
        }
    }
}

TEST_CASE("parametric subsets are invariant under the action", "[classifier][property]") {
    std::mt19937_64 rng(5);
    for (Family f : {Family::Dim7, Family::Dim8}) {
        for (const auto& s : classifier().subsets(f)) {
            if (!s.parametric() || known_defect(f, s.index)) continue;
            const auto c = sample_rep(rng, s);
            if (!c) continue;
            std::vector<GaussRat> before;
            try {
                before = classifier().invariants_in(s, *c);
            } catch (const DenominatorVanished&) {
                continue;
            }
            for (int k = 0; k < 3; ++k) {
                const ParamC image = apply_adapted_direct(*c, random_t(rng, *c));
                INFO(s.name() << " " << c->to_string() << " -> " << image.to_string());
                CHECK(classifier().subset_of(image) == s.index);
                CHECK(classifier().invariants_in(s, image) == before);
            }
        }
    }
}

TEST_CASE("distinct single orbits are not reachable", "[classifier][property]") {
    std::mt19937_64 rng(3);
    const ParamC a = c7({0, 1, 0, 0, 0, 0, 1});
    const ParamC b = c7({1, 0, 0, 0, 0, 0, 1});
    REQUIRE(classifier().isomorphic(a, b) == Verdict::No);
    for (int n = 0; n < 1000; ++n) CHECK(apply_adapted_direct(a, random_t(rng, a)) != b);
}

TEST_CASE("malformed classification data", "[classifier]") {
    CHECK_THROWS_AS(Classifier::parse("{"), DataError);
    CHECK_THROWS_AS(Classifier::parse(R"({"format": "other", "version": 1})"), DataError);
    CHECK_THROWS_AS(Classifier::load(FLC_DATA_DIR "/missing.json"), DataError);
}

TEST_CASE("denominator safety of a clean invariant", "[classifier]") {
    const auto checks = classifier().denominator_safety(classifier().subset(Family::Dim7, 1));
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].safe);
    CHECK(checks[1].safe);
}

TEST_CASE("witness for equal inputs is the identity", "[witness]") {
    const ParamC a = c7({0, 1, 0, 0, 0, 0, 1});
    const auto w = witness_isomorphism(classifier(), a, a);
    CHECK(w.status == WitnessResult::Status::Found);
    REQUIRE(w.transform);
    CHECK(*w.transform == AdaptedTransform::identity(Family::Dim7));
}

TEST_CASE("witness with rational roots", "[witness]") {
    const ParamC from = c7({0, 16, 0, 0, 0, 0, 4});
    const ParamC to = c7({0, 1, 0, 0, 0, 0, 1});
    const auto w = witness_isomorphism(classifier(), from, to);
    REQUIRE(w.status == WitnessResult::Status::Found);
    CHECK(apply_adapted_direct(from, *w.transform) == to);
}

TEST_CASE("witness without Gaussian-rational roots", "[witness]") {
    // U7^6 with c01 = 2: the scaling needs a fourth root of 2.
    const ParamC from = c7({0, 2, 0, 0, 0, 0, 1});
    const ParamC to = c7({0, 1, 0, 0, 0, 0, 1});
    REQUIRE(classifier().isomorphic(from, to) == Verdict::Yes);
    const auto w = witness_isomorphism(classifier(), from, to);
    CHECK(w.status == WitnessResult::Status::RequiresAlgebraicExtension);
    CHECK_FALSE(w.equations.empty());
}

TEST_CASE("witness precondition", "[witness]") {
    CHECK_THROWS_AS(witness_isomorphism(classifier(), c7({0, 1, 0, 0, 0, 0, 1}), c7({1, 0, 0, 0, 0, 0, 1})),
                    NotIsomorphic);
}

TEST_CASE("witness round trip", "[witness][property]") {
    std::mt19937_64 rng(17);
    int found = 0;
    for (Family f : {Family::Dim7, Family::Dim8}) {
        for (int n = 0; n < 25; ++n) {
            ParamC c(f);
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = pick(rng);
            if (f == Family::Dim8 && !c.at("c34").is_zero()) c.set("c23", GaussRat(-2) * c.at("c12"));
            const ParamC image = apply_adapted_direct(c, random_t(rng, c));
            const auto w = find_transform(c, image);
            INFO(c.to_string() << " -> " << image.to_string());
            CHECK(w.status != WitnessResult::Status::Unresolved);
            if (w.status == WitnessResult::Status::Found) {
                ++found;
                CHECK(apply_adapted_direct(c, *w.transform) == image);
            }
        }
    }
    CHECK(found > 0);
}

TEST_CASE("transform equations vanish at a known transform", "[witness]") {
    std::mt19937_64 rng(23);
    const ParamC c = c8({1, 2, 0, 1, 1, 0, 3, -2, 1, 1});
    const AdaptedTransform t = random_t(rng, c);
    const ParamC image = apply_adapted_direct(c, t);
    const auto eq = transform_equations(c, image);
    std::vector<GaussRat> at{t.a0, t.a1};
    at.insert(at.end(), t.b.begin(), t.b.end());
    for (const auto& p : eq.equations) CHECK(p.eval(at).is_zero());
}
