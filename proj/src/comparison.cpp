#include "mdist/comparison.hpp"

#include "mdist/rules.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace mdist {

BipartiteVoterGraph build_bipartite(const VoteProfile& profile, int x, int y) {
    const int n = profile.candidates();
    const int m = profile.voters();
    if (x < 0 || x >= n || y < 0 || y >= n)
        throw std::invalid_argument("build_bipartite: candidate out of range");

    // below[v]: candidates ranked weakly below x by v; above[v']: candidates
    // ranked weakly above y by v'. Edge iff the two sets intersect.
    std::vector<CandidateSet> below(m, CandidateSet(n)), above(m, CandidateSet(n));
    for (int v = 0; v < m; ++v)
        for (int z = 0; z < n; ++z) {
            if (profile.weakly_prefers(v, x, z)) below[v].set(z);
            if (profile.weakly_prefers(v, z, y)) above[v].set(z);
        }

    BipartiteVoterGraph g{m, x, y, {}, {}};
    g.adj.resize(m);
    g.witness.resize(m);
    for (int v = 0; v < m; ++v)
        for (int v2 = 0; v2 < m; ++v2) {
            CandidateSet common = below[v] & above[v2];
            auto z = common.find_first();
            if (z != CandidateSet::npos) {
                g.adj[v].push_back(v2);
                g.witness[v].push_back(static_cast<int>(z));
            }
        }
    return g;
}

namespace {

bool try_augment(const BipartiteVoterGraph& g, int v, std::vector<int>& match_left,
                 std::vector<int>& match_right, std::vector<bool>& visited) {
    for (int v2 : g.adj[v]) {
        if (visited[v2]) continue;
        visited[v2] = true;
        if (match_right[v2] == -1 || try_augment(g, match_right[v2], match_left, match_right, visited)) {
            match_left[v] = v2;
            match_right[v2] = v;
            return true;
        }
    }
    return false;
}

}  // namespace

MatchingResult has_perfect_matching(const BipartiteVoterGraph& g) {
    MatchingResult result;
    result.match_left.assign(g.m, -1);
    result.match_right.assign(g.m, -1);
    int matched = 0;
    for (int v = 0; v < g.m; ++v) {
        std::vector<bool> visited(g.m, false);
        if (try_augment(g, v, result.match_left, result.match_right, visited)) ++matched;
    }
    result.perfect = matched == g.m;
    if (result.perfect) return result;

    // Left vertices reachable from unmatched left vertices by alternating
    // paths (any edge rightwards, matching edge back). By the standard
    // argument this set loses at least one neighbour per unmatched member.
    VoterSet reach(g.m);
    std::deque<int> queue;
    for (int v = 0; v < g.m; ++v)
        if (result.match_left[v] == -1) {
            reach.set(v);
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int v2 : g.adj[v]) {
            int back = result.match_right[v2];
            if (back != -1 && !reach.test(back)) {
                reach.set(back);
                queue.push_back(back);
            }
        }
    }
    result.contracting = reach;
    return result;
}

namespace {

// Candidates some voter in V ranks weakly below x.
CandidateSet candidates_below(const VoteProfile& profile, int x, const VoterSet& voters) {
    CandidateSet out(profile.candidates());
    for (auto v = voters.find_first(); v != VoterSet::npos; v = voters.find_next(v))
        for (int z = 0; z < profile.candidates(); ++z)
            if (profile.weakly_prefers(static_cast<int>(v), x, z)) out.set(z);
    return out;
}

}  // namespace

HallWitness hall_witness(const VoteProfile& profile, int x, int y) {
    auto matching = has_perfect_matching(build_bipartite(profile, x, y));
    if (matching.perfect) return {true, {}, {}};

    // Close the contracting set: take every candidate one of its voters
    // ranks weakly below x, then every voter confined to those candidates.
    // The closure keeps the same neighbourhood, so it still contracts, and
    // it is a fixpoint: voters = last_x(complement E) exactly.
    CandidateSet e = candidates_below(profile, x, matching.contracting);
    CandidateSet complement = ~e;
    VoterSet voters = voters_ranking_last(profile, x, complement);

    if (!e.test(x)) throw std::logic_error("hall_witness: witness set lost the first candidate");
    if (e.test(y)) throw std::logic_error("hall_witness: witness set captured the rival");
    if ((matching.contracting & ~voters).any())
        throw std::logic_error("hall_witness: closure shrank the contracting set");
    if (candidates_below(profile, x, voters) != e)
        throw std::logic_error("hall_witness: closure is not a fixpoint");
    if (!witness_certifies(profile, x, y, e))
        throw std::logic_error("hall_witness: witness fails the counting inequality");
    return {false, std::move(e), std::move(voters)};
}

bool witness_certifies(const VoteProfile& profile, int x, int y, const CandidateSet& E) {
    if (!E.test(x) || E.test(y)) return false;
    VoterSet first = voters_ranking_first(profile, y, E);
    VoterSet last = voters_ranking_last(profile, x, ~E);
    return first.count() + last.count() > static_cast<std::size_t>(profile.voters());
}

std::vector<int> ComparisonGraph::sources() const {
    std::vector<bool> incoming(n, false);
    for (const auto& e : edges) incoming[e.to] = true;
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
        if (!incoming[x]) out.push_back(x);
    return out;
}

ComparisonGraph build_compg(const VoteProfile& profile) {
    const int n = profile.candidates();
    ComparisonGraph g{n, std::vector<CandidateSet>(n, CandidateSet(n)), {}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            auto witness = hall_witness(profile, x, y);
            if (!witness.matching_exists) {
                g.out[y].set(x);
                g.edges.push_back(
                    CompgEdge{y, x, std::move(witness.candidates), std::move(witness.voters)});
            }
        }
    return g;
}

AbmResult abm_winner(const VoteProfile& profile) {
    AbmResult result;
    result.compg = build_compg(profile);
    auto sources = result.compg.sources();
    if (sources.empty()) return result;  // research event, caller decides how loudly
    result.ok = true;
    result.winner = sources.front();
    return result;
}

MajoritySubgraphVerdict check_majority_subgraph(const VoteProfile& profile) {
    auto g = build_compg(profile);
    const Rational half(1, 2);
    for (const auto& e : g.edges)
        if (pairwise_fraction(profile, e.from, e.to) <= half) return {false, e.from, e.to};
    return {};
}

RestrictionVerdict compg_monotone_under_restriction(const VoteProfile& profile,
                                                    const CandidateSet& keep) {
    auto restricted = restrict_profile(profile, keep);
    auto inner = build_compg(restricted.profile);
    auto outer = build_compg(profile);
    std::vector<int> new_index(profile.candidates(), -1);
    for (std::size_t i = 0; i < restricted.kept.size(); ++i)
        new_index[restricted.kept[i]] = static_cast<int>(i);
    for (const auto& e : outer.edges) {
        if (new_index[e.from] < 0 || new_index[e.to] < 0) continue;
        if (!inner.has_edge(new_index[e.from], new_index[e.to])) return {false, e.from, e.to};
    }
    return {};
}

std::string compg_to_dot(const ComparisonGraph& g) {
    std::ostringstream out;
    out << "digraph compg {\n";
    for (int x = 0; x < g.n; ++x) out << "  c" << x << ";\n";
    for (const auto& e : g.edges) out << "  c" << e.from << " -> c" << e.to << ";\n";
    out << "}\n";
    return out.str();
}

std::string write_compg(const ComparisonGraph& g) {
    std::ostringstream out;
    out << "compg " << g.n << '\n';
    for (const auto& e : g.edges) {
        out << "edge " << e.from << ' ' << e.to << " E";
        for (auto z = e.witness_candidates.find_first(); z != CandidateSet::npos;
             z = e.witness_candidates.find_next(z))
            out << ' ' << z;
        out << " V";
        for (auto v = e.witness_voters.find_first(); v != VoterSet::npos;
             v = e.witness_voters.find_next(v))
            out << ' ' << v;
        out << '\n';
    }
    out << "sources";
    for (int s : g.sources()) out << ' ' << s;
    out << '\n';
    return out.str();
}

}  // namespace mdist
