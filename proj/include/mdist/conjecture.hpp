#pragma once

#include "mdist/comparison.hpp"
#include "mdist/profile.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace mdist {

// The 3n-node graph family behind the exhaustive search. Nodes come in three
// rings y_i, a_i, b_i (ids i, n+i, 2n+i). Every graph contains the fixed
// edges (y_i, a_{i-1}), (y_i, b_{i-1}), (a_i, y_i), (b_i, y_i), indices mod
// n, and for each ordered pair (i,j) with j != i and j != i-1 exactly one of
// (a_j, y_i) or (y_i, b_j), selected by one choice bit.
struct ConstraintChoiceGraph {
    int n = 0;
    std::uint64_t bits = 0;  // n*(n-2) choice bits; set = (a_j, y_i), clear = (y_i, b_j)
};

int ccg_bit_count(int n);                        // n*(n-2)
int ccg_bit_index(int n, int i, int j);          // -1 when (i,j) carries no choice

// Out- and in-neighbourhood bitmasks over the 3n node ids.
struct CcgAdjacency {
    int n = 0;
    std::vector<std::uint32_t> out, in;
};

CcgAdjacency ccg_adjacency(const ConstraintChoiceGraph& g);

// Family of sets E_0..E_{n-1} over {0..n-1} with i in E_i and i+1 (mod n)
// not in E_i. In bijection with the choice bits: i in E_j picks (a_j, y_i).
struct SetFamily {
    int n = 0;
    std::vector<CandidateSet> sets;
};

void validate_set_family(const SetFamily& family);
ConstraintChoiceGraph ccg_from_sets(const SetFamily& family);
SetFamily sets_from_ccg(const ConstraintChoiceGraph& g);

// Searches for a nonempty index set S (smallest size first, lexicographic
// within a size) such that every choice of |S|+1 gadget nodes taken from
// {a_i, b_i : i in S} closes a directed cycle together with all of the y
// ring. Size |S|+1 suffices: induced subgraphs on larger node sets inherit
// cycles. A graph with no such S is a research event.
struct CcgCheck {
    bool satisfied = false;
    std::vector<int> witness;      // S, when satisfied
    std::uint64_t subsets_tested = 0;

    struct Failure {
        std::vector<int> s;
        std::uint32_t acyclic_t;  // node mask of the first cycle-free choice
    };
    std::vector<Failure> audit;  // one entry per S, when violated
};

CcgCheck check_ccg(const ConstraintChoiceGraph& g);

// Plain-text checkpoint: completed counter ranges with partial statistics.
struct SearchCheckpoint {
    int n = 0;

    struct Chunk {
        std::uint64_t begin = 0, end = 0;
        std::uint64_t checked = 0;
        int max_witness_size = 0;
        std::vector<std::uint64_t> violations;
    };
    std::vector<Chunk> completed;  // sorted by begin, non-overlapping

    bool covers(std::uint64_t begin, std::uint64_t end) const;
    void add(Chunk chunk);

    static SearchCheckpoint load(std::istream& in);
    void save(std::ostream& out) const;
};

struct SearchReport {
    int n = 0;
    std::uint64_t graphs_checked = 0;
    bool all_satisfied = true;
    int max_witness_size = 0;
    std::vector<std::uint64_t> violations;  // offending bit patterns
    double seconds = 0.0;
};

// Enumerates all 2^(n(n-2)) graphs, check_ccg on each. Workers share nothing
// but a chunk counter; statistics merge by sum/AND/max, so the report is
// identical for any worker count. Ranges already in `resume` are skipped and
// their statistics folded in; `on_progress`, when set, is called with the
// updated checkpoint after every finished chunk.
SearchReport exhaustive_search(int n, int workers = 1, const SearchCheckpoint* resume = nullptr,
                               std::function<void(const SearchCheckpoint&)> on_progress = {});

// Comparison-graph acyclicity for one profile; any cycle is returned verbatim.
struct AcyclicityVerdict {
    bool acyclic = true;
    std::vector<int> cycle;  // candidates along a directed cycle
};

AcyclicityVerdict check_profile_conjecture1(const VoteProfile& profile);
AcyclicityVerdict compg_acyclicity(const ComparisonGraph& g);

// For rankings drawn uniformly from the given list: expectation, per index i,
// of [i+1 precedes all of E_i] + [all of complement(E_i) precedes i]. The
// claim under test is that some index stays at or below 1.
struct PermutationExpectations {
    std::vector<Rational> expectation;
    int min_index = 0;
    bool satisfied = false;  // expectation[min_index] <= 1
};

PermutationExpectations check_conjecture2_on_voters(const std::vector<std::vector<int>>& rankings,
                                                    const SetFamily& family);

}  // namespace mdist
