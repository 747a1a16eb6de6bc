#include "doctest.h"

#include "mdist/instances.hpp"
#include "mdist/profile.hpp"

#include <sstream>

using namespace mdist;

namespace {

VoteProfile split_profile() { return VoteProfile(2, {{0, 1}, {1, 0}}); }
VoteProfile unanimous3() { return VoteProfile(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}); }
VoteProfile cycle3() { return VoteProfile(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }

}  // namespace

TEST_CASE("parse_profile accepts the documented format") {
    auto p = parse_profile(std::string("2 2\n0 1\n1 0\n"));
    CHECK(p.candidates() == 2);
    CHECK(p.voters() == 2);
    CHECK(p.rankings() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});

    auto q = parse_profile(std::string("3 1\n2 0 1\n"));
    CHECK(q.candidates() == 3);
    CHECK(q.voters() == 1);

    auto commented = parse_profile(std::string("# header comment\n2 1\n# inner\n1 0\n"));
    CHECK(commented.ranking(0) == std::vector<int>{1, 0});
}

TEST_CASE("parse_profile reports the offending line") {
    CHECK_THROWS_WITH_AS(parse_profile(std::string("3 2\n0 0 1\n0 1 2\n")),
                         "line 2: not a permutation", ParseError);
    CHECK_THROWS_AS(parse_profile(std::string("3 1\n0 1 7\n")), ParseError);
    CHECK_THROWS_AS(parse_profile(std::string("banana\n")), ParseError);
    CHECK_THROWS_AS(parse_profile(std::string("2 2\n0 1\n")), ParseError);
}

TEST_CASE("profile and metric files round-trip bit-exactly") {
    auto p = parse_profile(std::string("3 2\n2 0 1\n1 2 0\n"));
    CHECK(write_profile(p) == "3 2\n2 0 1\n1 2 0\n");
    CHECK(parse_profile(write_profile(p)) == p);

    auto metric = parse_metric(std::string("1/3 2 0\n5/7 1/2 3\n"));
    CHECK(write_metric(metric) == "1/3 2 0\n5/7 1/2 3\n");
    CHECK(metric.dist[1][0] == Rational(5, 7));
    CHECK_THROWS_AS(parse_metric(std::string("1 2\n3\n")), ParseError);
    CHECK_THROWS_AS(parse_metric(std::string("1 -2\n")), ParseError);
}

TEST_CASE("pairwise_fraction") {
    auto unanimous = VoteProfile(2, {{0, 1}, {0, 1}, {0, 1}});
    CHECK(pairwise_fraction(unanimous, 0, 1) == 1);
    CHECK(pairwise_fraction(split_profile(), 0, 1) == Rational(1, 2));
    CHECK(pairwise_fraction(cycle3(), 0, 1) == Rational(2, 3));
    CHECK_THROWS_AS(pairwise_fraction(split_profile(), 1, 1), std::invalid_argument);
}

TEST_CASE("pairwise fractions of a pair sum to one") {
    auto p = gen_random_profile(5, 7, 42);
    for (int x = 0; x < 5; ++x)
        for (int y = x + 1; y < 5; ++y)
            CHECK(pairwise_fraction(p, x, y) + pairwise_fraction(p, y, x) == 1);
}

TEST_CASE("voters_ranking_first and _last") {
    auto p = unanimous3();
    CHECK(voters_ranking_first(p, 0, CandidateSet(3)).count() == 3);  // empty set: everyone
    CHECK(voters_ranking_first(p, 1, candidate_set(3, {1})).none());  // strictness
    CHECK(voters_ranking_first(p, 1, candidate_set(3, {2})).count() == 3);
    CHECK(voters_ranking_last(p, 2, candidate_set(3, {0, 1})).count() == 3);
    CHECK(voters_ranking_last(p, 0, CandidateSet(3)).count() == 3);

    auto split = split_profile();
    auto last = voters_ranking_last(split, 0, candidate_set(2, {1}));
    CHECK(last.count() == 1);
    CHECK(last.test(1));
}

TEST_CASE("first and last sets are disjoint for x outside Y") {
    auto p = gen_random_profile(5, 6, 7);
    for (int x = 0; x < 5; ++x) {
        auto ys = candidate_set(5, {(x + 1) % 5, (x + 2) % 5});
        auto first = voters_ranking_first(p, x, ys);
        auto last = voters_ranking_last(p, x, ys);
        CHECK((first & last).none());
    }
}

TEST_CASE("social_cost") {
    PseudoMetric flat;
    flat.dist.assign(4, std::vector<Rational>(3, Rational(5, 2)));
    CHECK(social_cost(flat, 1) == 10);
}

TEST_CASE("check_consistency") {
    PseudoMetric zero;
    zero.dist.assign(2, std::vector<Rational>(2, 0));
    CHECK(check_consistency(zero, split_profile()).ok);

    auto p = VoteProfile(2, {{0, 1}});
    PseudoMetric bad;
    bad.dist = {{2, 1}};
    auto verdict = check_consistency(bad, p);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.voter == 0);
    CHECK(verdict.preferred == 0);
    CHECK(verdict.other == 1);
}

TEST_CASE("check_triangle") {
    PseudoMetric bad;
    bad.dist = {{0, 10}, {1, 1}};
    auto verdict = check_triangle(bad);
    CHECK_FALSE(verdict.ok);
    // d(v1,x2) = 10 > d(v1,x1) + d(v2,x1) + d(v2,x2) = 0 + 1 + 1
    CHECK(verdict.v == 0);
    CHECK(verdict.v2 == 1);
    CHECK(verdict.x == 1);
    CHECK(verdict.y == 0);

    PseudoMetric negative;
    negative.dist = {{Rational(-1)}};
    CHECK_FALSE(check_triangle(negative).ok);

    auto [profile, metric] = gen_euclidean_profile(4, 5, 2, 11);
    CHECK(check_triangle(metric).ok);
    CHECK(check_consistency(metric, profile).ok);
}

TEST_CASE("restrict_profile") {
    auto p = VoteProfile(3, {{0, 1, 2}, {2, 1, 0}});
    auto restricted = restrict_profile(p, candidate_set(3, {0, 2}));
    CHECK(restricted.profile.rankings() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(restricted.kept == std::vector<int>{0, 2});

    auto all = restrict_profile(p, candidate_set(3, {0, 1, 2}));
    CHECK(all.profile == p);

    auto single = restrict_profile(p, candidate_set(3, {1}));
    CHECK(single.profile.candidates() == 1);
    CHECK(single.profile.ranking(0) == std::vector<int>{0});
    CHECK(single.profile.ranking(1) == std::vector<int>{0});

    CHECK_THROWS_AS(restrict_profile(p, CandidateSet(3)), std::invalid_argument);
}

TEST_CASE("restriction preserves pairwise fractions among kept candidates") {
    auto p = gen_random_profile(6, 5, 99);
    auto keep = candidate_set(6, {1, 3, 4});
    auto restricted = restrict_profile(p, keep);
    for (std::size_t i = 0; i < restricted.kept.size(); ++i)
        for (std::size_t j = 0; j < restricted.kept.size(); ++j) {
            if (i == j) continue;
            CHECK(pairwise_fraction(restricted.profile, static_cast<int>(i), static_cast<int>(j)) ==
                  pairwise_fraction(p, restricted.kept[i], restricted.kept[j]));
        }
}

TEST_CASE("euclidean profiles are consistent for many seeds") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto [profile, metric] = gen_euclidean_profile(5, 4, 1 + seed % 3, seed);
        CHECK(check_consistency(metric, profile).ok);
        CHECK(check_triangle(metric).ok);
    }
}

TEST_CASE("profile_hash distinguishes profiles") {
    CHECK(profile_hash(split_profile()) == profile_hash(split_profile()));
    CHECK(profile_hash(split_profile()) != profile_hash(unanimous3()));
}
