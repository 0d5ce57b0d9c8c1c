#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bohrgap/groups.hpp"

using namespace bohrgap;

namespace {

GroupElem random_elem(const GroupSpec& spec, std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 6);
    std::vector<GroupElem> gens = symmetric_closure(standard_generators(spec));
    GroupElem g = identity_of(spec);
    int n = len(rng);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < n; ++i) g = g * gens[pick(rng)];
    return g;
}

}  // namespace

TEST_CASE("element arithmetic") {
    GroupElem a = GroupElem::word({1});
    GroupElem b = GroupElem::word({2});
    CHECK((a * a.inverse()).is_identity());
    CHECK((a * b).to_string() == "a b");
    CHECK((a * b.inverse()).to_string() == "a b'");
    CHECK(GroupElem::word({1, -1}).is_identity());
    CHECK(GroupElem::word({1, 2, -2, -1}).is_identity());
    CHECK((a * b).length() == 2);

    GroupElem v = GroupElem::zvec({1, -2});
    CHECK(v.to_string() == "(1,-2)");
    CHECK(v.length() == 3);
    CHECK((v * v.inverse()).is_identity());

    GroupElem p = GroupElem::perm({1, 0, 2});
    CHECK(p.to_string() == "[1 0 2]");
    CHECK((p * p).is_identity());

    // composition convention: (a o b)(i) = a[b[i]]
    GroupElem c3 = GroupElem::perm({1, 2, 0});
    GroupElem t = GroupElem::perm({1, 0, 2});
    CHECK((c3 * t).as_perm() == Perm{2, 1, 0});
}

TEST_CASE("associativity and inverses on random triples") {
    std::mt19937 rng(5);
    for (const char* name : {"free:2", "z:3", "perm:4:(0 1 2 3),(0 1)"}) {
        GroupSpec spec = parse_group_spec(name);
        for (int t = 0; t < 300; ++t) {
            GroupElem g = random_elem(spec, rng), h = random_elem(spec, rng),
                      k = random_elem(spec, rng);
            CHECK((g * h) * k == g * (h * k));
            CHECK((g * g.inverse()).is_identity());
            CHECK(g.inverse().inverse() == g);
        }
    }
}

TEST_CASE("cayley balls") {
    GroupSpec f2 = parse_group_spec("free:2");
    auto gens = symmetric_closure(standard_generators(f2));
    CHECK(cayley_ball(f2, gens, 0).size() == 1);
    CHECK(cayley_ball(f2, gens, 0)[0].is_identity());
    CHECK(cayley_ball(f2, gens, 2).size() == 17);

    GroupSpec z2 = parse_group_spec("z:2");
    auto zgens = symmetric_closure(standard_generators(z2));
    CHECK(cayley_ball(z2, zgens, 1).size() == 5);

    SUBCASE("free group closed form |B_r| = 2k((2k-1)^r - 1)/(2k-2) + 1") {
        for (int k : {2, 3}) {
            GroupSpec f = FreeGroup{k};
            auto fg = symmetric_closure(standard_generators(f));
            long pw = 1;
            for (int r = 1; r <= 5; ++r) {
                pw *= 2 * k - 1;
                long expect = 2L * k * (pw - 1) / (2 * k - 2) + 1;
                CHECK(static_cast<long>(cayley_ball(f, fg, r).size()) == expect);
            }
        }
    }

    SUBCASE("Z^2 counts 2r^2 + 2r + 1") {
        for (int r = 0; r <= 6; ++r)
            CHECK(static_cast<long>(cayley_ball(z2, zgens, r).size()) == 2L * r * r + 2 * r + 1);
    }

    SUBCASE("balls are ordered prefixes of each other") {
        auto b3 = cayley_ball(f2, gens, 3);
        auto b4 = cayley_ball(f2, gens, 4);
        REQUIRE(b3.size() <= b4.size());
        for (std::size_t i = 0; i < b3.size(); ++i) CHECK(b3[i] == b4[i]);
    }

    SUBCASE("symmetry: g in ball iff inverse in ball") {
        auto b = cayley_ball(f2, gens, 3);
        std::set<GroupElem> s(b.begin(), b.end());
        for (const GroupElem& g : b) CHECK(s.count(g.inverse()) == 1);
    }

    SUBCASE("cap") {
        CHECK_THROWS_AS(cayley_ball(f2, gens, 10, 100), BallTooLarge);
    }

    SUBCASE("finite permutation group saturates") {
        GroupSpec s3 = parse_group_spec("perm:3:(0 1 2),(0 1)");
        auto pg = symmetric_closure(standard_generators(s3));
        CHECK(cayley_ball(s3, pg, 10).size() == 6);
        CHECK(enumerate_perm_group(std::get<PermGroup>(s3)).size() == 6);
    }
}

TEST_CASE("measure validation") {
    GroupSpec f2 = parse_group_spec("free:2");

    GenMeasure lazy = lazy_uniform(f2);
    CHECK(lazy.support.size() == 5);
    CHECK(lazy.identity_weight() == Rational(1, 5));
    CHECK(lazy.min_nonidentity_weight() == Rational(1, 5));
    CHECK_NOTHROW(validate_measure(f2, lazy));

    SUBCASE("missing identity") {
        GenMeasure mu;
        for (const GroupElem& g : symmetric_closure(standard_generators(f2)))
            mu.support.emplace_back(g, Rational(1, 4));
        CHECK_THROWS_AS(validate_measure(f2, mu), MissingIdentity);
    }

    SUBCASE("not symmetric") {
        GenMeasure mu;
        GroupElem a = GroupElem::word({1});
        mu.support.emplace_back(identity_of(f2), Rational(1, 4));
        mu.support.emplace_back(a, Rational(1, 2));
        mu.support.emplace_back(a.inverse(), Rational(1, 4));
        // restrict to the one-generator free group so gens match support
        CHECK_THROWS_AS(validate_measure(parse_group_spec("free:1"), mu), NotSymmetric);
    }

    SUBCASE("not a probability") {
        GenMeasure mu = lazy_uniform(f2);
        mu.support[0].second = Rational(1, 2);
        CHECK_THROWS_AS(validate_measure(f2, mu), NotProbability);
    }

    SUBCASE("permutation support must generate") {
        GroupSpec s3 = parse_group_spec("perm:3:(0 1 2),(0 1)");
        GenMeasure mu;
        GroupElem t = parse_elem(s3, "[1 0 2]");
        mu.support.emplace_back(identity_of(s3), Rational(1, 3));
        mu.support.emplace_back(t, Rational(2, 3));
        CHECK_THROWS_AS(validate_measure(s3, mu), NotGenerating);
    }
}

TEST_CASE("parsing") {
    CHECK(std::get<FreeGroup>(parse_group_spec("free:2")).rank == 2);
    CHECK(std::get<ZPow>(parse_group_spec("z:3")).dim == 3);
    PermGroup pg = std::get<PermGroup>(parse_group_spec("perm:4:(0 1 2 3),(0 1)"));
    CHECK(pg.degree == 4);
    CHECK(pg.gens.size() == 2);
    CHECK(pg.gens[0] == Perm{1, 2, 3, 0});
    CHECK(pg.gens[1] == Perm{1, 0, 2, 3});

    GroupSpec f2 = parse_group_spec("free:2");
    CHECK(parse_elem(f2, "a b' a") == GroupElem::word({1, -2, 1}));
    CHECK(parse_elem(f2, "e").is_identity());
    CHECK(parse_elem(parse_group_spec("z:2"), "(1,-2)") == GroupElem::zvec({1, -2}));

    GenMeasure mu = parse_measure(f2, "e 1/5\na 1/5\na' 1/5\nb 1/5\nb' 1/5\n");
    CHECK(mu.support.size() == 5);
    CHECK_NOTHROW(validate_measure(f2, mu));

    CHECK_THROWS_AS(parse_group_spec("frei:2"), ParseError);
    CHECK_THROWS_AS(parse_elem(f2, "c"), ParseError);
}
