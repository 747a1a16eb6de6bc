#pragma once

#include "mdist/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdist {

// Bitset over voter indices 0..m-1.
using VoterSet = boost::dynamic_bitset<>;
// Bitset over candidate indices 0..n-1.
using CandidateSet = boost::dynamic_bitset<>;

// A file/parse error carrying the offending 1-based physical line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// One strict total order per voter, most-preferred candidate first.
// Immutable after construction; position[v][x] caches each candidate's rank.
class VoteProfile {
public:
    VoteProfile() = default;
    // Validates that every ranking is a permutation of {0..n-1}.
    VoteProfile(int num_candidates, std::vector<std::vector<int>> rankings);

    int candidates() const { return n_; }
    int voters() const { return m_; }
    const std::vector<std::vector<int>>& rankings() const { return rankings_; }
    const std::vector<int>& ranking(int v) const { return rankings_[v]; }

    // Rank of candidate x in voter v's order; 0 = most preferred.
    int position(int v, int x) const { return positions_[v][x]; }
    // True iff v strictly prefers x over y.
    bool prefers(int v, int x, int y) const { return positions_[v][x] < positions_[v][y]; }
    // True iff x == y or v strictly prefers x over y.
    bool weakly_prefers(int v, int x, int y) const { return positions_[v][x] <= positions_[v][y]; }

    bool operator==(const VoteProfile& other) const { return rankings_ == other.rankings_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> rankings_;
    std::vector<std::vector<int>> positions_;
};

// Voter-to-candidate distances; all entries nonnegative exact rationals.
struct PseudoMetric {
    std::vector<std::vector<Rational>> dist;  // dist[v][x]

    int voters() const { return static_cast<int>(dist.size()); }
    int candidates() const { return dist.empty() ? 0 : static_cast<int>(dist[0].size()); }
};

// --- file formats -----------------------------------------------------------
//
// Profile file: optional '#' comment lines, then "n m", then m lines of n
// candidate indices each (most preferred first).
// Metric file: optional '#' comment lines, then m lines of n whitespace
// separated rationals ("p/q" or integer).
// Writers emit the canonical form, which reparses bit-exactly.

VoteProfile parse_profile(std::istream& in);
VoteProfile parse_profile(const std::string& text);
std::string write_profile(const VoteProfile& profile);

PseudoMetric parse_metric(std::istream& in);
PseudoMetric parse_metric(const std::string& text);
std::string write_metric(const PseudoMetric& metric);

// FNV-1a over the canonical profile text; binds certificate dumps to their profile.
std::uint64_t profile_hash(const VoteProfile& profile);

// --- elementary queries -----------------------------------------------------

// Fraction of voters preferring x over y; requires x != y.
Rational pairwise_fraction(const VoteProfile& profile, int x, int y);

// Voters ranking x strictly ahead of every candidate in ys (all voters if ys
// is empty; empty if x is in ys).
VoterSet voters_ranking_first(const VoteProfile& profile, int x, const CandidateSet& ys);

// Voters ranking x strictly behind every candidate in ys.
VoterSet voters_ranking_last(const VoteProfile& profile, int x, const CandidateSet& ys);

// Sum of distances from candidate x to all voters.
Rational social_cost(const PseudoMetric& metric, int x);

struct ConsistencyVerdict {
    bool ok = true;
    // First violation: voter prefers `preferred` but it is strictly farther than `other`.
    int voter = -1, preferred = -1, other = -1;
};

// A metric is consistent with a profile when no voter prefers a strictly
// farther candidate. Ties in distance are compatible with either order.
ConsistencyVerdict check_consistency(const PseudoMetric& metric, const VoteProfile& profile);

struct TriangleVerdict {
    bool ok = true;
    int v = -1, v2 = -1, x = -1, y = -1;  // d(v,x) > d(v,y) + d(v2,y) + d(v2,x)
};

// Checks nonnegativity and the four-point inequality
// d(v,x) <= d(v,y) + d(v',y) + d(v',x) over all voter/candidate quadruples.
TriangleVerdict check_triangle(const PseudoMetric& metric);

struct RestrictedProfile {
    VoteProfile profile;
    std::vector<int> kept;  // kept[new_index] = old_index, ascending
};

// Drops all candidates outside `keep`, reindexing the survivors densely and
// preserving every voter's relative order. `keep` must be nonempty.
RestrictedProfile restrict_profile(const VoteProfile& profile, const CandidateSet& keep);

// Convenience constructors used throughout the tests and CLI.
CandidateSet candidate_set(int n, std::initializer_list<int> members);
CandidateSet candidate_set(int n, const std::vector<int>& members);

}  // namespace mdist
