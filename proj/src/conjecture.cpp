#include "mdist/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mdist {

int ccg_bit_count(int n) { return n * (n - 2); }

int ccg_bit_index(int n, int i, int j) {
    if (i < 0 || i >= n || j < 0 || j >= n) return -1;
    if (j == i || j == (i + n - 1) % n) return -1;
    // Bits packed i-major; within row i, j skips the two excluded columns.
    int offset = 0;
    for (int jj = 0; jj < j; ++jj)
        if (jj != i && jj != (i + n - 1) % n) ++offset;
    return i * (n - 2) + offset;
}

namespace {

void require_supported(int n) {
    if (n < 3) throw std::invalid_argument("constraint-choice graphs need n >= 3");
    if (ccg_bit_count(n) > 63)
        throw std::invalid_argument("choice-bit pattern exceeds 63 bits at n = " +
                                    std::to_string(n));
}

}  // namespace

CcgAdjacency ccg_adjacency(const ConstraintChoiceGraph& g) {
    require_supported(g.n);
    const int n = g.n;
    auto y = [](int i) { return i; };
    auto a = [n](int i) { return n + i; };
    auto b = [n](int i) { return 2 * n + i; };

    CcgAdjacency adj{n, std::vector<std::uint32_t>(3 * n, 0), std::vector<std::uint32_t>(3 * n, 0)};
    auto edge = [&adj](int from, int to) {
        adj.out[from] |= std::uint32_t(1) << to;
        adj.in[to] |= std::uint32_t(1) << from;
    };
    for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n;
        edge(y(i), a(prev));
        edge(y(i), b(prev));
        edge(a(i), y(i));
        edge(b(i), y(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int bit = ccg_bit_index(n, i, j);
            if (bit < 0) continue;
            if ((g.bits >> bit) & 1)
                edge(a(j), y(i));
            else
                edge(y(i), b(j));
        }
    return adj;
}

void validate_set_family(const SetFamily& family) {
    const int n = family.n;
    require_supported(n);
    if (static_cast<int>(family.sets.size()) != n)
        throw std::invalid_argument("set family needs exactly n sets");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(family.sets[i].size()) != n)
            throw std::invalid_argument("set " + std::to_string(i) + " has wrong universe size");
        if (!family.sets[i].test(i))
            throw std::invalid_argument("set " + std::to_string(i) + " must contain its own index");
        if (family.sets[i].test((i + 1) % n))
            throw std::invalid_argument("set " + std::to_string(i) +
                                        " must not contain its successor index");
    }
}

ConstraintChoiceGraph ccg_from_sets(const SetFamily& family) {
    validate_set_family(family);
    ConstraintChoiceGraph g{family.n, 0};
    for (int j = 0; j < family.n; ++j)
        for (int i = 0; i < family.n; ++i) {
            int bit = ccg_bit_index(family.n, i, j);
            if (bit >= 0 && family.sets[j].test(i)) g.bits |= std::uint64_t(1) << bit;
        }
    return g;
}

SetFamily sets_from_ccg(const ConstraintChoiceGraph& g) {
    require_supported(g.n);
    SetFamily family{g.n, std::vector<CandidateSet>(g.n, CandidateSet(g.n))};
    for (int j = 0; j < g.n; ++j) {
        family.sets[j].set(j);
        for (int i = 0; i < g.n; ++i) {
            int bit = ccg_bit_index(g.n, i, j);
            if (bit >= 0 && ((g.bits >> bit) & 1)) family.sets[j].set(i);
        }
    }
    return family;
}

namespace {

// Kahn-style peeling restricted to `mask`; whatever survives lies on a cycle.
bool has_cycle(const CcgAdjacency& adj, std::uint32_t mask) {
    std::uint32_t alive = mask;
    bool removed = true;
    while (alive && removed) {
        removed = false;
        std::uint32_t scan = alive;
        while (scan) {
            int u = std::countr_zero(scan);
            scan &= scan - 1;
            if ((adj.in[u] & alive) == 0) {
                alive &= ~(std::uint32_t(1) << u);
                removed = true;
            }
        }
    }
    return alive != 0;
}

// Visits index subsets of {0..count-1} of the given size in lexicographic
// order; stops early when the callback returns false.
template <typename Fn>
bool for_each_combination(int count, int size, Fn&& fn) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    if (size > count) return true;
    for (;;) {
        if (!fn(pick)) return false;
        int i = size - 1;
        while (i >= 0 && pick[i] == count - size + i) --i;
        if (i < 0) return true;
        ++pick[i];
        for (int k = i + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
}

}  // namespace

CcgCheck check_ccg(const ConstraintChoiceGraph& g) {
    require_supported(g.n);
    const int n = g.n;
    const auto adj = ccg_adjacency(g);
    const std::uint32_t y_mask = (std::uint32_t(1) << n) - 1;

    CcgCheck result;
    for (int s_size = 1; s_size <= n && !result.satisfied; ++s_size) {
        for_each_combination(n, s_size, [&](const std::vector<int>& s) {
            // Gadget nodes of S, ordered (a_i, b_i) by ascending i.
            std::vector<std::uint32_t> gadget;
            gadget.reserve(2 * s.size());
            for (int i : s) {
                gadget.push_back(std::uint32_t(1) << (n + i));
                gadget.push_back(std::uint32_t(1) << (2 * n + i));
            }
            bool all_cyclic = true;
            std::uint64_t tested = 0;
            for_each_combination(static_cast<int>(gadget.size()), s_size + 1,
                                 [&](const std::vector<int>& pick) {
                                     std::uint32_t t_mask = 0;
                                     for (int k : pick) t_mask |= gadget[k];
                                     ++tested;
                                     if (!has_cycle(adj, y_mask | t_mask)) {
                                         result.audit.push_back({s, t_mask});
                                         all_cyclic = false;
                                         return false;
                                     }
                                     return true;
                                 });
            if (all_cyclic) {
                result.satisfied = true;
                result.witness = s;
                result.subsets_tested = tested;
                return false;
            }
            return true;
        });
    }
    if (result.satisfied) result.audit.clear();
    return result;
}

bool SearchCheckpoint::covers(std::uint64_t begin, std::uint64_t end) const {
    for (const auto& chunk : completed)
        if (chunk.begin <= begin && end <= chunk.end) return true;
    return false;
}

void SearchCheckpoint::add(Chunk chunk) {
    auto at = std::lower_bound(completed.begin(), completed.end(), chunk.begin,
                               [](const Chunk& c, std::uint64_t b) { return c.begin < b; });
    completed.insert(at, std::move(chunk));
}

SearchCheckpoint SearchCheckpoint::load(std::istream& in) {
    SearchCheckpoint ckpt;
    std::string word;
    if (!(in >> word) || word != "search" || !(in >> ckpt.n))
        throw std::runtime_error("checkpoint: missing 'search <n>' header");
    while (in >> word) {
        if (word != "range") throw std::runtime_error("checkpoint: expected 'range' line");
        Chunk chunk;
        std::size_t violations = 0;
        if (!(in >> chunk.begin >> chunk.end >> chunk.checked >> chunk.max_witness_size >>
              violations))
            throw std::runtime_error("checkpoint: malformed range line");
        if (chunk.end <= chunk.begin || chunk.checked != chunk.end - chunk.begin)
            throw std::runtime_error("checkpoint: inconsistent range line");
        for (std::size_t i = 0; i < violations; ++i) {
            std::uint64_t bits;
            if (!(in >> bits)) throw std::runtime_error("checkpoint: missing violation pattern");
            chunk.violations.push_back(bits);
        }
        ckpt.add(std::move(chunk));
    }
    for (std::size_t i = 1; i < ckpt.completed.size(); ++i)
        if (ckpt.completed[i].begin < ckpt.completed[i - 1].end)
            throw std::runtime_error("checkpoint: overlapping ranges");
    return ckpt;
}

void SearchCheckpoint::save(std::ostream& out) const {
    out << "search " << n << '\n';
    for (const auto& chunk : completed) {
        out << "range " << chunk.begin << ' ' << chunk.end << ' ' << chunk.checked << ' '
            << chunk.max_witness_size << ' ' << chunk.violations.size();
        for (auto bits : chunk.violations) out << ' ' << bits;
        out << '\n';
    }
}

SearchReport exhaustive_search(int n, int workers, const SearchCheckpoint* resume,
                               std::function<void(const SearchCheckpoint&)> on_progress) {
    require_supported(n);
    if (resume && resume->n != n)
        throw std::invalid_argument("checkpoint was produced for a different n");
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t total = std::uint64_t(1) << ccg_bit_count(n);
    const std::uint64_t chunk_size = std::max<std::uint64_t>(1024, total / 4096);
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;

    SearchCheckpoint merged;
    merged.n = n;
    if (resume) {
        // Ranges must sit on the chunk grid, or the skip test would re-run
        // (and double-count) partially covered chunks.
        for (const auto& chunk : resume->completed)
            if (chunk.end > total || chunk.begin % chunk_size != 0 ||
                (chunk.end % chunk_size != 0 && chunk.end != total))
                throw std::invalid_argument(
                    "checkpoint ranges do not align with the search grid");
        merged = *resume;
    }

    std::mutex lock;
    std::atomic<std::uint64_t> next{0};
    workers = std::max(1, workers);

    auto worker = [&]() {
        for (;;) {
            const std::uint64_t index = next.fetch_add(1);
            if (index >= chunks) return;
            const std::uint64_t begin = index * chunk_size;
            const std::uint64_t end = std::min(total, begin + chunk_size);
            {
                std::lock_guard<std::mutex> guard(lock);
                if (merged.covers(begin, end)) continue;
            }
            SearchCheckpoint::Chunk chunk;
            chunk.begin = begin;
            chunk.end = end;
            for (std::uint64_t bits = begin; bits < end; ++bits) {
                auto check = check_ccg(ConstraintChoiceGraph{n, bits});
                ++chunk.checked;
                if (check.satisfied)
                    chunk.max_witness_size =
                        std::max(chunk.max_witness_size, static_cast<int>(check.witness.size()));
                else
                    chunk.violations.push_back(bits);
            }
            std::lock_guard<std::mutex> guard(lock);
            merged.add(std::move(chunk));
            if (on_progress) on_progress(merged);
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SearchReport report;
    report.n = n;
    for (const auto& chunk : merged.completed) {
        report.graphs_checked += chunk.checked;
        report.max_witness_size = std::max(report.max_witness_size, chunk.max_witness_size);
        report.violations.insert(report.violations.end(), chunk.violations.begin(),
                                 chunk.violations.end());
    }
    std::sort(report.violations.begin(), report.violations.end());
    report.all_satisfied = report.violations.empty();
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

AcyclicityVerdict compg_acyclicity(const ComparisonGraph& g) {
    // Iterative three-colour DFS; the first back edge closes the cycle.
    enum { White, Grey, Black };
    std::vector<int> colour(g.n, White);
    std::vector<int> stack, parent(g.n, -1);
    for (int start = 0; start < g.n; ++start) {
        if (colour[start] != White) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            int u = stack.back();
            if (colour[u] == White) {
                colour[u] = Grey;
                for (auto x = g.out[u].find_first(); x != CandidateSet::npos;
                     x = g.out[u].find_next(x)) {
                    int to = static_cast<int>(x);
                    if (colour[to] == Grey) {
                        std::vector<int> cycle{to};
                        for (int at = u; at != to; at = parent[at]) cycle.push_back(at);
                        std::reverse(cycle.begin(), cycle.end());
                        return {false, std::move(cycle)};
                    }
                    if (colour[to] == White) {
                        parent[to] = u;
                        stack.push_back(to);
                    }
                }
            } else {
                colour[u] = Black;
                stack.pop_back();
            }
        }
    }
    return {};
}

AcyclicityVerdict check_profile_conjecture1(const VoteProfile& profile) {
    return compg_acyclicity(build_compg(profile));
}

PermutationExpectations check_conjecture2_on_voters(const std::vector<std::vector<int>>& rankings,
                                                    const SetFamily& family) {
    validate_set_family(family);
    if (rankings.empty()) throw std::invalid_argument("need at least one ranking");
    const int n = family.n;
    VoteProfile profile(n, rankings);  // validates the permutations

    PermutationExpectations result;
    result.expectation.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        const int successor = (i + 1) % n;
        int hits = 0;
        for (int v = 0; v < profile.voters(); ++v) {
            bool plus = true;
            for (auto z = family.sets[i].find_first(); z != CandidateSet::npos;
                 z = family.sets[i].find_next(z))
                if (!profile.prefers(v, successor, static_cast<int>(z))) {
                    plus = false;
                    break;
                }
            bool minus = true;
            CandidateSet outside = ~family.sets[i];
            for (auto z = outside.find_first(); z != CandidateSet::npos;
                 z = outside.find_next(z))
                if (!profile.prefers(v, static_cast<int>(z), i)) {
                    minus = false;
                    break;
                }
            hits += static_cast<int>(plus) + static_cast<int>(minus);
        }
        result.expectation[i] = Rational(hits, profile.voters());
    }
    result.min_index = 0;
    for (int i = 1; i < n; ++i)
        if (result.expectation[i] < result.expectation[result.min_index]) result.min_index = i;
    result.satisfied = result.expectation[result.min_index] <= 1;
    return result;
}

}  // namespace mdist
