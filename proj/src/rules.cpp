#include "mdist/rules.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace mdist {

namespace {

// All pairwise fractions at once; fractions[x][y] = p_{x,y}.
std::vector<std::vector<Rational>> pairwise_matrix(const VoteProfile& profile) {
    const int n = profile.candidates();
    const int m = profile.voters();
    std::vector<std::vector<int>> wins(n, std::vector<int>(n, 0));
    for (int v = 0; v < m; ++v) {
        const auto& r = profile.ranking(v);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) ++wins[r[i]][r[j]];
    }
    std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) p[x][y] = Rational(wins[x][y], m);
    return p;
}

}  // namespace

MajorityGraph majority_graph(const VoteProfile& profile, MajorityMode mode) {
    const int n = profile.candidates();
    const Rational half(1, 2);
    auto p = pairwise_matrix(profile);
    MajorityGraph g{n, mode, std::vector<CandidateSet>(n, CandidateSet(n))};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            bool edge = mode == MajorityMode::Strict ? p[x][y] > half : p[x][y] >= half;
            if (edge) g.out[x].set(y);
        }
    return g;
}

int copeland_winner(const VoteProfile& profile) {
    const int n = profile.candidates();
    const Rational half(1, 2);
    auto p = pairwise_matrix(profile);
    int best = 0;
    Rational best_score(-1);
    for (int x = 0; x < n; ++x) {
        Rational score = 0;
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            if (p[x][y] > half)
                score += 1;
            else if (p[x][y] == half)
                score += half;
        }
        if (score > best_score) {
            best_score = score;
            best = x;
        }
    }
    return best;
}

CandidateSet uncovered_set(const VoteProfile& profile) {
    const int n = profile.candidates();
    auto g = majority_graph(profile, MajorityMode::Weak);
    CandidateSet result(n);
    for (int x = 0; x < n; ++x) {
        // Everything reachable in <= 2 hops.
        CandidateSet reached = g.out[x];
        for (auto z = g.out[x].find_first(); z != CandidateSet::npos; z = g.out[x].find_next(z))
            reached |= g.out[z];
        reached.set(x);
        if (reached.all()) result.set(x);
    }
    return result;
}

int ranked_pairs_winner(const VoteProfile& profile) {
    const int n = profile.candidates();
    if (n == 1) return 0;
    auto p = pairwise_matrix(profile);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n - 1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) pairs.emplace_back(x, y);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
        if (p[a.first][a.second] != p[b.first][b.second])
            return p[a.first][a.second] > p[b.first][b.second];
        return a < b;
    });

    std::vector<CandidateSet> out(n, CandidateSet(n));
    auto reachable = [&](int from, int to) {
        CandidateSet seen(n);
        std::deque<int> queue{from};
        seen.set(from);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            if (u == to) return true;
            for (auto z = out[u].find_first(); z != CandidateSet::npos; z = out[u].find_next(z))
                if (!seen.test(z)) {
                    seen.set(z);
                    queue.push_back(static_cast<int>(z));
                }
        }
        return false;
    };

    for (auto [x, y] : pairs)
        if (!reachable(y, x)) out[x].set(y);

    std::vector<bool> has_incoming(n, false);
    for (int x = 0; x < n; ++x)
        for (auto y = out[x].find_first(); y != CandidateSet::npos; y = out[x].find_next(y))
            has_incoming[y] = true;
    int source = -1;
    for (int x = 0; x < n; ++x)
        if (!has_incoming[x]) {
            if (source != -1)
                throw std::logic_error("ranked pairs: multiple sources in completed graph");
            source = x;
        }
    if (source == -1) throw std::logic_error("ranked pairs: completed graph has no source");
    return source;
}

WidestPathMatrix widest_path_widths(const VoteProfile& profile) {
    const int n = profile.candidates();
    WidestPathMatrix s{n, pairwise_matrix(profile)};
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x) {
            if (x == z) continue;
            for (int y = 0; y < n; ++y) {
                if (y == z || y == x) continue;
                const Rational& through = std::min(s.width[x][z], s.width[z][y]);
                if (through > s.width[x][y]) s.width[x][y] = through;
            }
        }
    return s;
}

int schulze_winner(const VoteProfile& profile) {
    const int n = profile.candidates();
    auto s = widest_path_widths(profile);
    for (int x = 0; x < n; ++x) {
        bool wins = true;
        for (int y = 0; y < n && wins; ++y)
            if (y != x && s.width[x][y] < s.width[y][x]) wins = false;
        if (wins) return x;
    }
    throw std::logic_error("schulze: no candidate dominates in widest-path widths");
}

ChainProperty verify_chain_property(const VoteProfile& profile, int w, int y) {
    if (w == y) throw std::invalid_argument("verify_chain_property: w and y must differ");
    const int n = profile.candidates();
    auto p = pairwise_matrix(profile);
    auto s = widest_path_widths(profile);
    const Rational width = s.width[w][y];

    ChainProperty result;
    result.p = width;
    if (p[y][w] > width) {
        result.failure = "rival preferred by more voters (" + format_rational(p[y][w]) +
                         ") than the widest path width " + format_rational(width);
        return result;
    }

    // Shortest path from w to y using only hops of fraction >= width; vertices
    // on a shortest path are automatically distinct.
    std::vector<int> parent(n, -1);
    std::deque<int> queue{w};
    std::vector<bool> seen(n, false);
    seen[w] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == y) break;
        for (int z = 0; z < n; ++z)
            if (z != u && !seen[z] && p[u][z] >= width) {
                seen[z] = true;
                parent[z] = u;
                queue.push_back(z);
            }
    }
    if (!seen[y]) {
        result.failure = "no path of width " + format_rational(width) + " from winner to rival";
        return result;
    }
    std::vector<int> path;
    for (int u = y; u != -1; u = parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    result.ok = true;
    result.path = std::move(path);
    return result;
}

Rational single_hop_bound(const Rational& q) {
    if (q <= 0 || q > 1) throw std::invalid_argument("single_hop_bound: fraction must be in (0,1]");
    return 1 + 2 * (1 - q) / q;
}

}  // namespace mdist
