#include "doctest.h"

#include "mdist/comparison.hpp"
#include "mdist/distortion.hpp"
#include "mdist/flow.hpp"
#include "mdist/instances.hpp"
#include "mdist/rules.hpp"

using namespace mdist;

namespace {

VoteProfile split2() { return VoteProfile(2, {{0, 1}, {1, 0}}); }
VoteProfile unanimous3() { return VoteProfile(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}); }

bool has_edge(const BipartiteVoterGraph& g, int v, int v2) {
    return std::find(g.adj[v].begin(), g.adj[v].end(), v2) != g.adj[v].end();
}

}  // namespace

TEST_CASE("build_bipartite") {
    // Identical endpoints: z = x connects every pair.
    auto same = build_bipartite(unanimous3(), 1, 1);
    for (int v = 0; v < 3; ++v) CHECK(same.adj[v].size() == 3);

    // Bottom against top of a unanimous order: nothing connects.
    auto empty = build_bipartite(unanimous3(), 2, 0);
    for (int v = 0; v < 3; ++v) CHECK(empty.adj[v].empty());

    auto g = build_bipartite(split2(), 0, 1);
    CHECK(has_edge(g, 0, 0));
    CHECK(has_edge(g, 0, 1));
    CHECK(has_edge(g, 1, 0));
    CHECK_FALSE(has_edge(g, 1, 1));
    // stored witnesses satisfy the defining conditions
    for (int v = 0; v < g.m; ++v)
        for (std::size_t k = 0; k < g.adj[v].size(); ++k) {
            int v2 = g.adj[v][k], z = g.witness[v][k];
            CHECK(split2().weakly_prefers(v, 0, z));
            CHECK(split2().weakly_prefers(v2, z, 1));
        }
}

TEST_CASE("has_perfect_matching") {
    auto complete = build_bipartite(unanimous3(), 0, 0);
    auto full = has_perfect_matching(complete);
    CHECK(full.perfect);

    auto empty = build_bipartite(unanimous3(), 2, 0);
    auto none = has_perfect_matching(empty);
    CHECK_FALSE(none.perfect);
    CHECK(none.contracting.count() == 3);  // every left voter is isolated

    auto three_edges = has_perfect_matching(build_bipartite(split2(), 0, 1));
    REQUIRE(three_edges.perfect);
    CHECK(three_edges.match_left == std::vector<int>{1, 0});
}

TEST_CASE("hall_witness certifies missing matchings") {
    auto witness = hall_witness(unanimous3(), 2, 0);
    REQUIRE_FALSE(witness.matching_exists);
    CHECK(witness.candidates == candidate_set(3, {2}));
    // |first_0({2})| + |last_2({0,1})| = 3 + 3 > 3
    CHECK(voters_ranking_first(unanimous3(), 0, witness.candidates).count() == 3);
    CHECK(witness.voters.count() == 3);
    CHECK(witness_certifies(unanimous3(), 2, 0, witness.candidates));

    CHECK(hall_witness(split2(), 0, 1).matching_exists);
    CHECK(hall_witness(split2(), 1, 0).matching_exists);
}

TEST_CASE("hall witnesses replay on random profiles, both directions") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto p = gen_random_profile(1 + seed % 5, 1 + (seed * 3) % 5, 4000 + seed);
        for (int x = 0; x < p.candidates(); ++x)
            for (int y = 0; y < p.candidates(); ++y) {
                if (x == y) continue;
                auto witness = hall_witness(p, x, y);
                bool matched = has_perfect_matching(build_bipartite(p, x, y)).perfect;
                CHECK(witness.matching_exists == matched);
                if (!witness.matching_exists) {
                    CHECK(witness.candidates.test(x));
                    CHECK_FALSE(witness.candidates.test(y));
                    CHECK(witness_certifies(p, x, y, witness.candidates));
                    CHECK(witness.voters ==
                          voters_ranking_last(p, x, ~witness.candidates));
                }
            }
    }
}

TEST_CASE("build_compg") {
    auto g = build_compg(unanimous3());
    // The unanimous favourite is safe; every other candidate is ruled out.
    auto sources = g.sources();
    REQUIRE(sources.size() == 1);
    CHECK(sources[0] == 0);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(1, 0));

    CHECK(build_compg(split2()).edges.empty());

    auto lone = build_compg(VoteProfile(1, {{0}}));
    CHECK(lone.edges.empty());
    CHECK(lone.sources() == std::vector<int>{0});
}

TEST_CASE("self pairs never appear in the comparison graph") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto p = gen_random_profile(1 + seed % 5, 1 + (seed * 7) % 4, 600 + seed);
        auto g = build_compg(p);
        for (const auto& e : g.edges) CHECK(e.from != e.to);
    }
}

TEST_CASE("abm_winner") {
    CHECK(abm_winner(unanimous3()).winner == 0);
    CHECK(abm_winner(VoteProfile(1, {{0}})).winner == 0);
    auto result = abm_winner(split2());
    REQUIRE(result.ok);
    CHECK(result.winner == 0);
}

TEST_CASE("abm winner has matching certificates of cost at most 3 for every rival") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto p = gen_random_profile(2 + seed % 4, 1 + (seed * 5) % 5, 1700 + seed);
        auto result = abm_winner(p);
        REQUIRE(result.ok);
        const int w = result.winner;
        for (int c = 0; c < p.candidates(); ++c) {
            if (c == w) continue;
            auto g = build_bipartite(p, w, c);
            auto matching = has_perfect_matching(g);
            REQUIRE(matching.perfect);
            std::vector<int> intermediates(p.voters());
            for (int v = 0; v < p.voters(); ++v) {
                auto at = std::find(g.adj[v].begin(), g.adj[v].end(), matching.match_left[v]);
                intermediates[v] = g.witness[v][at - g.adj[v].begin()];
            }
            auto verified =
                verify_certificate(matching_flow(p, w, c, matching.match_left, intermediates));
            REQUIRE(verified.ok);
            CHECK(verified.max_voter_cost <= 3);
            CHECK(opt_dist(p, w, c) <= verified.max_voter_cost);
        }
    }
}

TEST_CASE("every comparison edge is backed by a strict majority") {
    CHECK(check_majority_subgraph(unanimous3()).ok);
    CHECK(check_majority_subgraph(split2()).ok);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto p = gen_random_profile(1 + seed % 6, 1 + (seed * 11) % 6, 2500 + seed);
        CHECK(check_majority_subgraph(p).ok);
    }
}

TEST_CASE("restriction can only add comparison edges") {
    auto p = unanimous3();
    CHECK(compg_monotone_under_restriction(p, candidate_set(3, {0, 1, 2})).ok);
    CHECK(compg_monotone_under_restriction(p, candidate_set(3, {1, 2})).ok);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto q = gen_random_profile(4 + seed % 2, 1 + (seed * 3) % 5, 8800 + seed);
        for (int a = 0; a < q.candidates(); ++a)
            for (int b = a + 1; b < q.candidates(); ++b)
                CHECK(compg_monotone_under_restriction(q, candidate_set(q.candidates(), {a, b})).ok);
    }
}

TEST_CASE("comparison graph dumps") {
    auto g = build_compg(unanimous3());
    auto dot = compg_to_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("c0 -> c1") != std::string::npos);
    auto text = write_compg(g);
    CHECK(text.find("compg 3") != std::string::npos);
    CHECK(text.find("sources 0") != std::string::npos);
}
