#pragma once

#include "mdist/profile.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mdist {

// Bipartite graph on two copies of the voters for a candidate pair (x,y):
// left voter v connects to right voter v' when some candidate z is ranked
// weakly below x by v and weakly above y by v'. The smallest such z is kept
// per edge; it later drives the matching flow construction directly.
struct BipartiteVoterGraph {
    int m = 0;
    int x = 0, y = 0;
    std::vector<std::vector<int>> adj;      // adj[v] = right neighbours, ascending
    std::vector<std::vector<int>> witness;  // witness[v][k] = z for edge (v, adj[v][k])
};

BipartiteVoterGraph build_bipartite(const VoteProfile& profile, int x, int y);

struct MatchingResult {
    bool perfect = false;
    std::vector<int> match_left;   // left -> right, -1 when unmatched (maximum matching)
    std::vector<int> match_right;  // right -> left, -1 when unmatched
    VoterSet contracting;          // when not perfect: a Hall-violating left set
};

// Augmenting-path maximum matching. When no perfect matching exists, the
// returned contracting set is the closure of the left vertices reachable
// from unmatched left vertices by alternating paths.
MatchingResult has_perfect_matching(const BipartiteVoterGraph& g);

// Certificate that B(x,y) has no perfect matching: a candidate set E with
// x in E, y not in E, and a voter set V such that
//   |first_y(E)| + |last_x(complement E)| > m,
// where V = last_x(complement E) is the contracting set itself.
struct HallWitness {
    bool matching_exists = false;
    CandidateSet candidates;  // E
    VoterSet voters;          // V
};

HallWitness hall_witness(const VoteProfile& profile, int x, int y);

// Replays a witness against the inequality above; used to confirm dumped
// witnesses independently of the matching search.
bool witness_certifies(const VoteProfile& profile, int x, int y, const CandidateSet& E);

// Directed graph on candidates with an edge (y,x) exactly when B(x,y) has no
// perfect matching; y then rules x out as a safe winner. Every edge carries
// its Hall witness.
struct CompgEdge {
    int from = 0, to = 0;  // edge (y, x)
    CandidateSet witness_candidates;
    VoterSet witness_voters;
};

struct ComparisonGraph {
    int n = 0;
    std::vector<CandidateSet> out;  // out[y].test(x) iff edge (y,x)
    std::vector<CompgEdge> edges;

    bool has_edge(int from, int to) const { return out[from].test(to); }
    std::vector<int> sources() const;  // nodes with no incoming edge
};

ComparisonGraph build_compg(const VoteProfile& profile);

// Picks the lowest-index source of the comparison graph. An instance without
// a source would be a research event: no safe winner certifiable this way.
struct AbmResult {
    bool ok = false;
    int winner = -1;
    ComparisonGraph compg;
};

AbmResult abm_winner(const VoteProfile& profile);

struct MajoritySubgraphVerdict {
    bool ok = true;
    int from = -1, to = -1;  // comparison edge without a strict majority behind it
};

// Every comparison-graph edge (y,x) should be backed by a strict majority
// preferring y over x.
MajoritySubgraphVerdict check_majority_subgraph(const VoteProfile& profile);

struct RestrictionVerdict {
    bool ok = true;
    int from = -1, to = -1;  // induced edge missing after restriction (old indices)
};

// Restricting the candidate set can only add comparison edges: the graph of
// the restricted profile must contain the induced subgraph on `keep`.
RestrictionVerdict compg_monotone_under_restriction(const VoteProfile& profile,
                                                    const CandidateSet& keep);

std::string compg_to_dot(const ComparisonGraph& g);
std::string write_compg(const ComparisonGraph& g);

}  // namespace mdist
