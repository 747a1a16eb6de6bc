#pragma once

#include "mdist/profile.hpp"

#include <cstdint>
#include <utility>

namespace mdist {

// The block-reversal family on which Ranked Pairs and Schulze go wrong by a
// factor of m/2: m block voters plus two voters holding the default order,
// over n = m*B candidates. Block voter v agrees with the default order
// inside each of its blocks but ranks the blocks in reverse, so exactly one
// voter disagrees with the default order on each adjacent candidate pair.
// Distances tie within blocks (and everywhere for the two default voters);
// the rankings come straight from the block structure, which the
// tie-tolerant consistency check accepts without perturbation.
struct LowerBoundInstance {
    int m = 0;           // block voters; the profile has m+2
    int block_param = 0; // B; blocks per voter, candidate count is m*B
    int n = 0;
    VoteProfile profile;
    PseudoMetric metric;
    Rational cost_first;  // predicted social cost of candidate 0
    Rational cost_last;   // predicted social cost of candidate n-1
};

// m must be even and >= 2. block_param <= 0 selects the default B = m/2,
// which maximizes the cost ratio; other values are for experimentation.
LowerBoundInstance gen_lower_bound(int m, int block_param = 0);

// Closed forms (2Bm + 2B + m - 2, 2B + m) with B = m/2.
std::pair<Rational, Rational> predicted_costs(int m);

// m independent uniform rankings from a seeded deterministic generator;
// bit-identical across runs and platforms for a fixed seed.
VoteProfile gen_random_profile(int n, int m, std::uint64_t seed);

// Voters and candidates on a seeded integer grid with exact l1 distances;
// each ranking sorts candidates by distance, ties broken by index. The pair
// passes both metric checks by construction.
std::pair<VoteProfile, PseudoMetric> gen_euclidean_profile(int n, int m, int dim,
                                                           std::uint64_t seed);

}  // namespace mdist
