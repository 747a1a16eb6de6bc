#pragma once

#include "mdist/profile.hpp"

#include <vector>

namespace mdist {

enum class MajorityMode {
    Strict,  // edge (x,y) iff p_{x,y} > 1/2
    Weak,    // edge (x,y) iff p_{x,y} >= 1/2
};

struct MajorityGraph {
    int n = 0;
    MajorityMode mode = MajorityMode::Strict;
    std::vector<CandidateSet> out;  // out[x].test(y) iff edge (x,y)

    bool has_edge(int x, int y) const { return out[x].test(y); }
};

MajorityGraph majority_graph(const VoteProfile& profile, MajorityMode mode);

// Candidate maximizing the count of strict pairwise wins, with exact ties
// (p = 1/2) worth half a point; lowest index wins score ties.
int copeland_winner(const VoteProfile& profile);

// Candidates with a weak-majority path of length at most 2 to every other
// candidate.
CandidateSet uncovered_set(const VoteProfile& profile);

// Considers ordered pairs by non-increasing p_{x,y} (ties lexicographic on
// (x,y)) and inserts each edge unless it would close a directed cycle; the
// unique source of the resulting DAG wins.
int ranked_pairs_winner(const VoteProfile& profile);

// Widest-path (max-min) closure of the pairwise-fraction digraph.
struct WidestPathMatrix {
    int n = 0;
    std::vector<std::vector<Rational>> width;  // width[x][y], x != y

    const Rational& operator()(int x, int y) const { return width[x][y]; }
};

WidestPathMatrix widest_path_widths(const VoteProfile& profile);

// Lowest-index candidate x with width(x,y) >= width(y,x) for all y.
int schulze_winner(const VoteProfile& profile);

// For a Ranked Pairs or Schulze winner w and a rival y: a path w -> ... -> y
// whose every hop is preferred by at least a p fraction of voters, where at
// most a p fraction prefer y over w. Failure would falsify the guarantee the
// two rules share and is reported, never thrown.
struct ChainProperty {
    bool ok = false;
    Rational p;              // width of the chain
    std::vector<int> path;   // starts at w, ends at y, distinct vertices
    std::string failure;     // set when !ok
};

ChainProperty verify_chain_property(const VoteProfile& profile, int w, int y);

// Cost ratio certified by a single hop a q fraction of voters agree with:
// 1 + 2(1-q)/q. Requires 0 < q <= 1.
Rational single_hop_bound(const Rational& q);

}  // namespace mdist
