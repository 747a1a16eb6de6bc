#include "mdist/distortion.hpp"

#include <atomic>
#include <optional>
#include <stdexcept>
#include <thread>

namespace mdist {

LinearProgram build_distortion_lp(const VoteProfile& profile, int w, int c) {
    const int n = profile.candidates();
    const int m = profile.voters();
    auto var = [m](int x, int v) { return x * m + v; };

    LinearProgram lp(n * m);
    for (int v = 0; v < m; ++v) lp.objective[var(w, v)] = 1;

    // d(x,v) <= d(x,v') + d(y,v') + d(y,v), all ordered quadruples.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int v = 0; v < m; ++v)
                for (int v2 = 0; v2 < m; ++v2) {
                    std::vector<Rational> row(lp.num_vars);
                    row[var(x, v)] += 1;
                    row[var(x, v2)] -= 1;
                    row[var(y, v2)] -= 1;
                    row[var(y, v)] -= 1;
                    lp.add_row(std::move(row), Relation::LessEq, 0);
                }

    // Preferred candidates are no farther; adjacent ranking pairs suffice.
    for (int v = 0; v < m; ++v) {
        const auto& r = profile.ranking(v);
        for (int i = 0; i + 1 < n; ++i) {
            std::vector<Rational> row(lp.num_vars);
            row[var(r[i], v)] = 1;
            row[var(r[i + 1], v)] = -1;
            lp.add_row(std::move(row), Relation::LessEq, 0);
        }
    }

    // cost(c) = 1
    {
        std::vector<Rational> row(lp.num_vars);
        for (int v = 0; v < m; ++v) row[var(c, v)] = 1;
        lp.add_row(std::move(row), Relation::Equal, 1);
    }
    // cost(x) >= 1 for all x: c is an optimum candidate
    for (int x = 0; x < n; ++x) {
        std::vector<Rational> row(lp.num_vars);
        for (int v = 0; v < m; ++v) row[var(x, v)] = 1;
        lp.add_row(std::move(row), Relation::GreaterEq, 1);
    }
    return lp;
}

namespace {

LpSolution solve_distortion(const VoteProfile& profile, int w, int c) {
    auto solution = solve_lp(build_distortion_lp(profile, w, c));
    if (solution.status == LpStatus::Unbounded) throw UnboundedDistortion(w, c);
    if (solution.status == LpStatus::Infeasible)
        throw std::logic_error("distortion LP infeasible on a valid profile");
    return solution;
}

// nullopt encodes an unbounded ratio.
std::optional<Rational> try_w_opt_dist(const VoteProfile& profile, int w) {
    Rational worst = 1;  // opt_dist(w, w)
    for (int c = 0; c < profile.candidates(); ++c) {
        if (c == w) continue;
        auto solution = solve_lp(build_distortion_lp(profile, w, c));
        if (solution.status == LpStatus::Unbounded) return std::nullopt;
        if (solution.status == LpStatus::Infeasible)
            throw std::logic_error("distortion LP infeasible on a valid profile");
        if (solution.objective > worst) worst = solution.objective;
    }
    return worst;
}

}  // namespace

Rational opt_dist(const VoteProfile& profile, int w, int c) {
    return solve_distortion(profile, w, c).objective;
}

Rational w_opt_dist(const VoteProfile& profile, int w) {
    Rational worst = 1;  // opt_dist(w, w)
    for (int c = 0; c < profile.candidates(); ++c) {
        if (c == w) continue;
        Rational value = opt_dist(profile, w, c);
        if (value > worst) worst = value;
    }
    return worst;
}

std::pair<int, Rational> lp_optimal_winner(const VoteProfile& profile, int workers) {
    const int n = profile.candidates();
    std::vector<std::optional<Rational>> distortion(n);
    if (workers <= 1 || n == 1) {
        for (int w = 0; w < n; ++w) distortion[w] = try_w_opt_dist(profile, w);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < std::min(workers, n); ++t)
            pool.emplace_back([&] {
                for (int w = next.fetch_add(1); w < n; w = next.fetch_add(1))
                    distortion[w] = try_w_opt_dist(profile, w);
            });
        for (auto& th : pool) th.join();
    }
    int best = -1;
    for (int w = 0; w < n; ++w) {
        if (!distortion[w]) continue;
        if (best == -1 || *distortion[w] < *distortion[best]) best = w;
    }
    if (best == -1)
        throw std::logic_error("every candidate has unbounded distortion, which cannot happen");
    return {best, *distortion[best]};
}

PseudoMetric worst_case_metric(const VoteProfile& profile, int w, int c) {
    const int n = profile.candidates();
    const int m = profile.voters();
    auto solution = solve_distortion(profile, w, c);
    PseudoMetric metric;
    metric.dist.assign(m, std::vector<Rational>(n));
    for (int x = 0; x < n; ++x)
        for (int v = 0; v < m; ++v) metric.dist[v][x] = solution.assignment[x * m + v];
    return metric;
}

}  // namespace mdist
