#include "doctest.h"

#include "mdist/instances.hpp"
#include "mdist/rules.hpp"

#include <map>

using namespace mdist;

TEST_CASE("lower-bound family, m = 4") {
    auto lb = gen_lower_bound(4);
    CHECK(lb.block_param == 2);
    CHECK(lb.n == 8);
    CHECK(lb.profile.voters() == 6);

    CHECK(check_consistency(lb.metric, lb.profile).ok);
    CHECK(check_triangle(lb.metric).ok);

    CHECK(lb.cost_first == 22);
    CHECK(lb.cost_last == 8);
    CHECK(social_cost(lb.metric, 0) == 22);
    CHECK(social_cost(lb.metric, lb.n - 1) == 8);
    CHECK(predicted_costs(4) == std::pair<Rational, Rational>{22, 8});

    CHECK(ranked_pairs_winner(lb.profile) == 0);
    CHECK(schulze_winner(lb.profile) == 0);
}

TEST_CASE("closed-form costs for other sizes") {
    CHECK(predicted_costs(6) == std::pair<Rational, Rational>{46, 12});
    CHECK(predicted_costs(2) == std::pair<Rational, Rational>{6, 4});
    CHECK_THROWS_AS(predicted_costs(3), std::invalid_argument);
    CHECK_THROWS_AS(gen_lower_bound(0), std::invalid_argument);

    for (int m : {2, 4, 6, 8}) {
        auto lb = gen_lower_bound(m);
        auto [first, last] = predicted_costs(m);
        CHECK(social_cost(lb.metric, 0) == first);
        CHECK(social_cost(lb.metric, lb.n - 1) == last);
        if (m >= 4) CHECK(first / last >= Rational(m, 2));
    }
}

TEST_CASE("the smallest instance degenerates to a two-candidate profile") {
    auto lb = gen_lower_bound(2);
    CHECK(lb.n == 2);
    CHECK(lb.profile.ranking(0) == std::vector<int>{0, 1});  // block order = default
    CHECK(lb.profile.ranking(1) == std::vector<int>{1, 0});
    CHECK(lb.profile.ranking(2) == std::vector<int>{0, 1});
    CHECK(social_cost(lb.metric, 0) == 6);
    CHECK(social_cost(lb.metric, 1) == 4);
}

TEST_CASE("block voter rankings follow the reversed block order") {
    // With the block parameter forced to the voter count, voter 4's ranking
    // runs 16, 12..15, 8..11, 4..7, 1..3 (written 1-based).
    auto lb = gen_lower_bound(4, 4);
    CHECK(lb.n == 16);
    std::vector<int> expected = {15, 11, 12, 13, 14, 7, 8, 9, 10, 3, 4, 5, 6, 0, 1, 2};
    CHECK(lb.profile.ranking(3) == expected);
}

TEST_CASE("exactly one block voter disagrees with each adjacent default pair") {
    for (int m : {2, 4, 6}) {
        auto lb = gen_lower_bound(m);
        for (int i = 0; i + 1 < lb.n; ++i) {
            int disagree = 0;
            for (int v = 0; v < m; ++v)
                if (lb.profile.prefers(v, i + 1, i)) ++disagree;
            CHECK(disagree == 1);
            // and the two default voters always agree
            CHECK(lb.profile.prefers(m, i, i + 1));
            CHECK(lb.profile.prefers(m + 1, i, i + 1));
        }
    }
}

TEST_CASE("lower-bound winners for the gated sizes") {
    for (int m : {6, 8}) {
        auto lb = gen_lower_bound(m);
        CHECK(ranked_pairs_winner(lb.profile) == 0);
        CHECK(schulze_winner(lb.profile) == 0);
        CHECK(check_consistency(lb.metric, lb.profile).ok);
        CHECK(check_triangle(lb.metric).ok);
    }
}

TEST_CASE("random profiles are reproducible and uniform-ish") {
    auto a = gen_random_profile(5, 6, 12345);
    auto b = gen_random_profile(5, 6, 12345);
    CHECK(a == b);
    CHECK_FALSE(gen_random_profile(5, 6, 12346) == a);

    auto lone = gen_random_profile(1, 4, 9);
    for (int v = 0; v < 4; ++v) CHECK(lone.ranking(v) == std::vector<int>{0});

    // frequency of each of the 6 rankings at n = 3 over many draws
    std::map<std::vector<int>, int> counts;
    const int draws = 10000;
    auto big = gen_random_profile(3, draws, 2718);
    for (int v = 0; v < draws; ++v) ++counts[big.ranking(v)];
    CHECK(counts.size() == 6);
    for (const auto& [perm, count] : counts) {
        double freq = static_cast<double>(count) / draws;
        CHECK(freq > 1.0 / 6 - 0.02);
        CHECK(freq < 1.0 / 6 + 0.02);
    }
}

TEST_CASE("euclidean generator self-consistency") {
    auto [profile, metric] = gen_euclidean_profile(6, 5, 2, 77);
    CHECK(profile.candidates() == 6);
    CHECK(metric.voters() == 5);
    CHECK(check_consistency(metric, profile).ok);
    CHECK(check_triangle(metric).ok);

    // one dimension, one voter: the ranking is single-peaked along the line
    auto [line_profile, line_metric] = gen_euclidean_profile(7, 1, 1, 5);
    const auto& r = line_profile.ranking(0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        CHECK(line_metric.dist[0][r[i]] <= line_metric.dist[0][r[i + 1]]);
    CHECK_THROWS_AS(gen_euclidean_profile(3, 3, 0, 1), std::invalid_argument);
}
