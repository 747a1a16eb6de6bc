#include "mdist/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mdist {

LowerBoundInstance gen_lower_bound(int m, int block_param) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("lower-bound family needs an even voter count >= 2");
    const int B = block_param > 0 ? block_param : m / 2;
    const int n = m * B;

    // Half-open candidate range of block b for 1-based block voter v.
    auto block = [&](int v, int b) -> std::pair<int, int> {
        if (b == 0) return {0, v - 1};
        if (b == B) return {(B - 1) * m + v - 1, n};
        return {(b - 1) * m + v - 1, b * m + v - 1};
    };

    std::vector<std::vector<int>> rankings(m + 2);
    PseudoMetric metric;
    metric.dist.assign(m + 2, std::vector<Rational>(n));
    for (int v = 1; v <= m; ++v) {
        auto& ranking = rankings[v - 1];
        ranking.reserve(n);
        for (int b = B; b >= 0; --b) {
            auto [lo, hi] = block(v, b);
            for (int x = lo; x < hi; ++x) {
                ranking.push_back(x);
                metric.dist[v - 1][x] = 2 * (B - b) + 1;
            }
        }
    }
    for (int v = m; v < m + 2; ++v) {
        rankings[v].resize(n);
        std::iota(rankings[v].begin(), rankings[v].end(), 0);
        for (int x = 0; x < n; ++x) metric.dist[v][x] = B;
    }

    LowerBoundInstance instance;
    instance.m = m;
    instance.block_param = B;
    instance.n = n;
    instance.profile = VoteProfile(n, std::move(rankings));
    instance.metric = std::move(metric);
    instance.cost_first = Rational(2) * B * m + 2 * B + m - 2;
    instance.cost_last = Rational(2) * B + m;
    return instance;
}

std::pair<Rational, Rational> predicted_costs(int m) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("lower-bound family needs an even voter count >= 2");
    const int B = m / 2;
    return {Rational(2) * B * m + 2 * B + m - 2, Rational(2) * B + m};
}

namespace {

// Fisher-Yates with a plain modulo draw. mt19937_64 output is pinned by the
// standard, so profiles reproduce bit-exactly everywhere.
std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng() % (i + 1)]);
    return perm;
}

}  // namespace

VoteProfile gen_random_profile(int n, int m, std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("profile needs n >= 1 and m >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> rankings;
    rankings.reserve(m);
    for (int v = 0; v < m; ++v) rankings.push_back(random_permutation(n, rng));
    return VoteProfile(n, std::move(rankings));
}

std::pair<VoteProfile, PseudoMetric> gen_euclidean_profile(int n, int m, int dim,
                                                           std::uint64_t seed) {
    if (n < 1 || m < 1) throw std::invalid_argument("profile needs n >= 1 and m >= 1");
    if (dim < 1) throw std::invalid_argument("embedding needs dim >= 1");
    constexpr int kGrid = 1000;
    std::mt19937_64 rng(seed);
    auto point = [&]() {
        std::vector<long> p(dim);
        for (auto& coord : p) coord = static_cast<long>(rng() % kGrid);
        return p;
    };
    std::vector<std::vector<long>> candidates(n), voters(m);
    for (auto& p : candidates) p = point();
    for (auto& p : voters) p = point();

    PseudoMetric metric;
    metric.dist.assign(m, std::vector<Rational>(n));
    std::vector<std::vector<int>> rankings(m);
    for (int v = 0; v < m; ++v) {
        std::vector<long> l1(n, 0);
        for (int x = 0; x < n; ++x) {
            for (int d = 0; d < dim; ++d) l1[x] += std::abs(voters[v][d] - candidates[x][d]);
            metric.dist[v][x] = l1[x];
        }
        rankings[v].resize(n);
        std::iota(rankings[v].begin(), rankings[v].end(), 0);
        std::sort(rankings[v].begin(), rankings[v].end(), [&](int a, int b) {
            return l1[a] != l1[b] ? l1[a] < l1[b] : a < b;
        });
    }
    return {VoteProfile(n, std::move(rankings)), std::move(metric)};
}

}  // namespace mdist
