// Command-line surface over the library: winners, distortion values,
// certificates, comparison graphs, the exhaustive graph search, instance
// generators and metric checks.
//
// Exit codes: 0 success / assertion holds; 1 usage or file error;
// 2 assertion failure; 3 research event (no safe winner, or a violation in
// the exhaustive search).

#include "CLI11.hpp"

#include "mdist/comparison.hpp"
#include "mdist/conjecture.hpp"
#include "mdist/distortion.hpp"
#include "mdist/flow.hpp"
#include "mdist/instances.hpp"
#include "mdist/profile.hpp"
#include "mdist/rules.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace mdist;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kAssertionFailed = 2;
constexpr int kResearchEvent = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

VoteProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open profile file '" + path + "'");
    return parse_profile(in);
}

PseudoMetric load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open metric file '" + path + "'");
    return parse_metric(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write file '" + path + "'");
    out << text;
}

std::string show(const Rational& q) {
    std::ostringstream out;
    out << format_rational(q);
    if (denominator(q) != 1) out << " (" << approx(q) << ")";
    return out.str();
}

void require_candidate(const VoteProfile& profile, int x, const char* what) {
    if (x < 0 || x >= profile.candidates())
        throw UsageError(std::string(what) + " index " + std::to_string(x) + " out of range");
}

std::vector<int> parse_path_list(const std::string& text) {
    std::vector<int> path;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ','))
        path.push_back(std::stoi(token));
    if (path.empty()) throw UsageError("empty candidate path");
    return path;
}

// --- subcommands -------------------------------------------------------------

int run_winners(const std::string& profile_path, const std::string& rule, int workers,
                const std::string& dump_path) {
    auto profile = load_profile(profile_path);
    if (rule == "copeland") {
        std::cout << "winner " << copeland_winner(profile) << '\n';
    } else if (rule == "uncovered") {
        auto set = uncovered_set(profile);
        std::cout << "uncovered";
        for (auto x = set.find_first(); x != CandidateSet::npos; x = set.find_next(x))
            std::cout << ' ' << x;
        std::cout << '\n';
    } else if (rule == "ranked-pairs") {
        std::cout << "winner " << ranked_pairs_winner(profile) << '\n';
    } else if (rule == "schulze") {
        std::cout << "winner " << schulze_winner(profile) << '\n';
    } else if (rule == "abm") {
        auto result = abm_winner(profile);
        if (!result.ok) {
            // No safe winner certifiable this way; report every candidate's
            // exact distortion instead of guessing one.
            std::cout << "no source in the comparison graph; dumping the instance\n";
            std::cout << write_compg(result.compg);
            for (int x = 0; x < profile.candidates(); ++x) {
                std::cout << "w-opt-dist " << x << " = ";
                try {
                    std::cout << show(w_opt_dist(profile, x)) << '\n';
                } catch (const UnboundedDistortion&) {
                    std::cout << "unbounded\n";
                }
            }
            if (!dump_path.empty())
                write_file(dump_path, write_profile(profile) + write_compg(result.compg));
            return kResearchEvent;
        }
        std::cout << "winner " << result.winner << '\n';
    } else if (rule == "lp-optimal") {
        auto [winner, value] = lp_optimal_winner(profile, workers);
        std::cout << "winner " << winner << "\nworst-ratio " << show(value) << '\n';
    } else {
        throw UsageError("unknown rule '" + rule + "'");
    }
    return kOk;
}

int run_distortion(const std::string& profile_path, int winner, std::optional<int> opt,
                   const std::string& metric_path, const std::string& lp_path) {
    auto profile = load_profile(profile_path);
    require_candidate(profile, winner, "winner");
    if (opt) require_candidate(profile, *opt, "optimum");
    if (!lp_path.empty() && opt)
        write_file(lp_path, write_lp(build_distortion_lp(profile, winner, *opt)));
    try {
        if (opt) {
            std::cout << "opt-dist " << winner << ' ' << *opt << " = "
                      << show(opt_dist(profile, winner, *opt)) << '\n';
            if (!metric_path.empty())
                write_file(metric_path, write_metric(worst_case_metric(profile, winner, *opt)));
        } else {
            std::cout << "w-opt-dist " << winner << " = " << show(w_opt_dist(profile, winner))
                      << '\n';
        }
    } catch (const UnboundedDistortion& e) {
        std::cout << "unbounded: " << e.what() << '\n';
    }
    return kOk;
}

int run_certificate(const std::string& profile_path, const std::string& kind,
                    const std::string& path_list, int winner, int opt,
                    const std::string& out_path) {
    auto profile = load_profile(profile_path);
    FlowCertificate cert{profile, 0, 0, {}};
    if (kind == "chain") {
        auto path = parse_path_list(path_list);
        for (int x : path) require_candidate(profile, x, "path");
        try {
            cert = chain_flow(profile, path);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (kind == "matching") {
        require_candidate(profile, winner, "winner");
        require_candidate(profile, opt, "optimum");
        auto g = build_bipartite(profile, winner, opt);
        auto matching = has_perfect_matching(g);
        if (!matching.perfect)
            throw UsageError("no perfect matching between candidates " + std::to_string(winner) +
                             " and " + std::to_string(opt));
        std::vector<int> intermediates(profile.voters());
        for (int v = 0; v < profile.voters(); ++v) {
            auto at = std::find(g.adj[v].begin(), g.adj[v].end(), matching.match_left[v]);
            intermediates[v] = g.witness[v][at - g.adj[v].begin()];
        }
        cert = matching_flow(profile, winner, opt, matching.match_left, intermediates);
    } else {
        throw UsageError("unknown certificate kind '" + kind + "'");
    }

    auto verified = verify_certificate(cert);
    if (!verified.ok) {
        std::cout << "certificate invalid: " << verified.error << '\n';
        return kAssertionFailed;
    }
    std::cout << "max-voter-cost " << show(verified.max_voter_cost) << '\n';
    if (!out_path.empty()) write_file(out_path, write_certificate(cert));
    return kOk;
}

int run_verify_cert(const std::string& profile_path, const std::string& cert_path) {
    auto profile = load_profile(profile_path);
    std::ifstream in(cert_path);
    if (!in) throw UsageError("cannot open certificate file '" + cert_path + "'");
    FlowCertificate cert{profile, 0, 0, {}};
    try {
        cert = parse_certificate(in, profile);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    auto verified = verify_certificate(cert);
    if (!verified.ok) {
        std::cout << "certificate invalid: " << verified.error << '\n';
        return kAssertionFailed;
    }
    std::cout << "max-voter-cost " << show(verified.max_voter_cost) << '\n';
    return kOk;
}

int run_compg_single(const VoteProfile& profile, const std::string& dot_path,
                     const std::string& dump_path) {
    auto g = build_compg(profile);
    std::cout << write_compg(g);
    if (!dot_path.empty()) write_file(dot_path, compg_to_dot(g));
    if (!dump_path.empty()) write_file(dump_path, write_compg(g));

    auto majority = check_majority_subgraph(profile);
    if (!majority.ok) {
        std::cout << "majority property violated on edge " << majority.from << " -> "
                  << majority.to << '\n';
        return kAssertionFailed;
    }
    auto acyclicity = compg_acyclicity(g);
    if (!acyclicity.acyclic) {
        std::cout << "cycle:";
        for (int x : acyclicity.cycle) std::cout << ' ' << x;
        std::cout << '\n';
        return kResearchEvent;
    }
    std::cout << "acyclic\n";
    return kOk;
}

int run_compg_batch(int batch, int n, int m, std::uint64_t seed) {
    int acyclic = 0, with_source = 0;
    for (int k = 0; k < batch; ++k) {
        auto profile = gen_random_profile(n, m, seed + k);
        auto g = build_compg(profile);
        bool ok_acyclic = compg_acyclicity(g).acyclic;
        bool ok_source = !g.sources().empty();
        acyclic += ok_acyclic;
        with_source += ok_source;
        if (!ok_acyclic || !ok_source) {
            std::cout << "research event at seed " << seed + k << ":\n" << write_profile(profile);
            return kResearchEvent;
        }
    }
    std::cout << "profiles " << batch << "\nacyclic " << acyclic << "\nwith-source "
              << with_source << '\n';
    return kOk;
}

int run_conjecture(int n, int workers, const std::string& checkpoint_path) {
    SearchCheckpoint checkpoint;
    SearchCheckpoint* resume = nullptr;
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        if (in) {
            checkpoint = SearchCheckpoint::load(in);
            resume = &checkpoint;
            std::uint64_t done = 0;
            for (const auto& c : checkpoint.completed) done += c.checked;
            std::cerr << "resuming; " << done << " graphs already checked\n";
        }
    }

    const auto started = std::chrono::steady_clock::now();
    auto last_flush = started;
    std::function<void(const SearchCheckpoint&)> on_progress;
    if (!checkpoint_path.empty()) {
        on_progress = [&](const SearchCheckpoint& state) {
            auto now = std::chrono::steady_clock::now();
            std::uint64_t done = 0, frontier = 0;
            for (const auto& c : state.completed) {
                done += c.checked;
                frontier = std::max(frontier, c.end);
            }
            if (std::chrono::duration<double>(now - last_flush).count() > 2.0) {
                double elapsed = std::chrono::duration<double>(now - started).count();
                std::cerr << "progress: " << done << " graphs, "
                          << static_cast<std::uint64_t>(done / std::max(elapsed, 1e-9))
                          << " graphs/s, counter at " << frontier << '\n';
                last_flush = now;
            }
            std::ostringstream text;
            state.save(text);
            write_file(checkpoint_path, text.str());
        };
    }

    auto report = exhaustive_search(n, workers, resume, on_progress);
    std::cout << report.graphs_checked << " graphs, " << report.violations.size()
              << " violations\nmax-witness-size " << report.max_witness_size << "\nseconds "
              << report.seconds << '\n';
    if (!report.all_satisfied) {
        for (auto bits : report.violations) std::cout << "violation " << bits << '\n';
        return kResearchEvent;
    }
    return kOk;
}

int run_gen(const std::string& kind, int m, int n, int dim, std::uint64_t seed, int block,
            const std::string& out_profile, const std::string& out_metric) {
    if (kind == "lowerbound") {
        auto instance = gen_lower_bound(m, block);
        if (!out_profile.empty()) write_file(out_profile, write_profile(instance.profile));
        if (!out_metric.empty()) write_file(out_metric, write_metric(instance.metric));
        std::cout << "n " << instance.n << "\npredicted-costs " << format_rational(instance.cost_first)
                  << ' ' << format_rational(instance.cost_last) << '\n';
    } else if (kind == "random") {
        auto profile = gen_random_profile(n, m, seed);
        if (!out_profile.empty()) write_file(out_profile, write_profile(profile));
        std::cout << write_profile(profile);
    } else if (kind == "euclidean") {
        auto [profile, metric] = gen_euclidean_profile(n, m, dim, seed);
        if (!out_profile.empty()) write_file(out_profile, write_profile(profile));
        if (!out_metric.empty()) write_file(out_metric, write_metric(metric));
        std::cout << write_profile(profile);
    } else {
        throw UsageError("unknown generator kind '" + kind + "'");
    }
    return kOk;
}

int run_metric_check(const std::string& profile_path, const std::string& metric_path) {
    auto profile = load_profile(profile_path);
    auto metric = load_metric(metric_path);
    if (metric.voters() != profile.voters() || metric.candidates() != profile.candidates())
        throw UsageError("metric is " + std::to_string(metric.voters()) + "x" +
                         std::to_string(metric.candidates()) + ", profile needs " +
                         std::to_string(profile.voters()) + "x" +
                         std::to_string(profile.candidates()));
    bool ok = true;
    auto consistency = check_consistency(metric, profile);
    if (!consistency.ok) {
        ok = false;
        std::cout << "consistency violated: voter " << consistency.voter << " prefers "
                  << consistency.preferred << " over " << consistency.other
                  << " but it is farther\n";
    }
    auto triangle = check_triangle(metric);
    if (!triangle.ok) {
        ok = false;
        std::cout << "triangle violated at voters (" << triangle.v << "," << triangle.v2
                  << ") candidates (" << triangle.x << "," << triangle.y << ")\n";
    }
    std::cout << (ok ? "ok\n" : "failed\n");
    return ok ? kOk : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact metric-distortion toolkit for ranked voting"};
    app.require_subcommand(1);

    // winners
    std::string profile_path, rule = "copeland", dump_path;
    int workers = 1;
    auto* winners = app.add_subcommand("winners", "apply a voting rule to a profile");
    winners->add_option("--profile", profile_path, "profile file")->required();
    winners->add_option("--rule", rule,
                        "copeland | uncovered | ranked-pairs | schulze | abm | lp-optimal");
    winners->add_option("--workers", workers, "parallel LP workers (lp-optimal)");
    winners->add_option("--dump", dump_path, "failure dump file (abm)");

    // distortion
    std::string d_profile, d_metric, d_lp;
    int d_winner = 0;
    int d_opt = -1;
    auto* distortion = app.add_subcommand("distortion", "worst-case cost ratios via the exact LP");
    distortion->add_option("--profile", d_profile, "profile file")->required();
    distortion->add_option("--winner", d_winner, "winner index")->required();
    distortion->add_option("--opt", d_opt, "optimum index (omit to maximize over rivals)");
    distortion->add_option("--dump", d_metric, "write the maximizing metric here");
    distortion->add_option("--dump-lp", d_lp, "write the program itself here");

    // certificate
    std::string c_profile, c_kind = "chain", c_path_list, c_out;
    int c_winner = 0, c_opt = 0;
    auto* certificate = app.add_subcommand("certificate", "build and verify a flow certificate");
    certificate->add_option("--profile", c_profile, "profile file")->required();
    certificate->add_option("--kind", c_kind, "chain | matching");
    certificate->add_option("--path", c_path_list, "comma-separated candidate path (chain)");
    certificate->add_option("--winner", c_winner, "winner index (matching)");
    certificate->add_option("--opt", c_opt, "optimum index (matching)");
    certificate->add_option("--out", c_out, "write the certificate here");

    // verify-cert
    std::string v_profile, v_cert;
    auto* verify = app.add_subcommand("verify-cert", "re-verify a dumped certificate");
    verify->add_option("--profile", v_profile, "profile file")->required();
    verify->add_option("--cert", v_cert, "certificate file")->required();

    // compg
    std::string g_profile, g_dot, g_dump;
    int g_batch = 0, g_n = 4, g_m = 4;
    std::uint64_t g_seed = 1;
    auto* compg = app.add_subcommand("compg", "candidate comparison graph with witnesses");
    compg->add_option("--profile", g_profile, "profile file");
    compg->add_option("--dot", g_dot, "write DOT here");
    compg->add_option("--dump", g_dump, "write the edge list here");
    compg->add_option("--batch", g_batch, "check this many random profiles instead");
    compg->add_option("--n", g_n, "candidates (batch)");
    compg->add_option("--m", g_m, "voters (batch)");
    compg->add_option("--seed", g_seed, "first seed (batch)");

    // conjecture
    int j_n = 4, j_workers = 1;
    std::string j_checkpoint;
    auto* conjecture = app.add_subcommand("conjecture", "exhaustive constraint-choice graph search");
    conjecture->add_option("--n", j_n, "ring size (>= 3)")->required();
    conjecture->add_option("--workers", j_workers, "worker threads");
    conjecture->add_option("--checkpoint", j_checkpoint, "checkpoint file (resume if present)");

    // gen
    std::string gen_kind = "random", gen_profile_out, gen_metric_out;
    int gen_m = 4, gen_n = 4, gen_dim = 2, gen_block = 0;
    std::uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("--kind", gen_kind, "lowerbound | random | euclidean");
    gen->add_option("--m", gen_m, "voters");
    gen->add_option("--n", gen_n, "candidates");
    gen->add_option("--dim", gen_dim, "embedding dimension (euclidean)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--block", gen_block, "override the block parameter (lowerbound)");
    gen->add_option("--out-profile", gen_profile_out, "profile output file");
    gen->add_option("--out-metric", gen_metric_out, "metric output file");

    // metric-check
    std::string mc_profile, mc_metric;
    auto* metric_check = app.add_subcommand("metric-check", "consistency and triangle checks");
    metric_check->add_option("--profile", mc_profile, "profile file")->required();
    metric_check->add_option("--metric", mc_metric, "metric file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (winners->parsed()) return run_winners(profile_path, rule, workers, dump_path);
        if (distortion->parsed())
            return run_distortion(d_profile, d_winner,
                                  distortion->count("--opt") ? std::optional<int>(d_opt)
                                                             : std::nullopt,
                                  d_metric, d_lp);
        if (certificate->parsed())
            return run_certificate(c_profile, c_kind, c_path_list, c_winner, c_opt, c_out);
        if (verify->parsed()) return run_verify_cert(v_profile, v_cert);
        if (compg->parsed()) {
            if (g_batch > 0) return run_compg_batch(g_batch, g_n, g_m, g_seed);
            if (g_profile.empty()) throw UsageError("compg needs --profile or --batch");
            return run_compg_single(load_profile(g_profile), g_dot, g_dump);
        }
        if (conjecture->parsed()) return run_conjecture(j_n, j_workers, j_checkpoint);
        if (gen->parsed())
            return run_gen(gen_kind, gen_m, gen_n, gen_dim, gen_seed, gen_block, gen_profile_out,
                           gen_metric_out);
        if (metric_check->parsed()) return run_metric_check(mc_profile, mc_metric);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
