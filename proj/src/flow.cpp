#include "mdist/flow.hpp"

#include <sstream>

namespace mdist {

std::size_t FlowGraph::preference_edge_count() const {
    std::size_t n = profile.candidates();
    return profile.voters() * (n * (n - 1) / 2);
}

std::size_t FlowGraph::sideways_edge_count() const {
    std::size_t m = profile.voters();
    return static_cast<std::size_t>(profile.candidates()) * m * (m - 1);
}

FlowGraph build_flow_graph(const VoteProfile& profile, int w, int c) {
    if (w < 0 || w >= profile.candidates() || c < 0 || c >= profile.candidates())
        throw std::invalid_argument("build_flow_graph: candidate out of range");
    return FlowGraph{profile, w, c};
}

void FlowCertificate::add(int vf, int xf, int vt, int xt, const Rational& amount) {
    const int n = profile.candidates();
    const int m = profile.voters();
    if (vf < 0 || vf >= m || vt < 0 || vt >= m || xf < 0 || xf >= n || xt < 0 || xt >= n)
        throw std::invalid_argument("flow edge endpoint out of range");
    if (amount == 0) return;
    flow[{vf * n + xf, vt * n + xt}] += amount;
}

VerifyResult verify_certificate(const FlowCertificate& cert) {
    const int n = cert.profile.candidates();
    const int m = cert.profile.voters();
    const FlowGraph graph{cert.profile, cert.w, cert.c};

    auto describe = [n](int id) {
        return "(" + std::to_string(id / n) + "," + std::to_string(id % n) + ")";
    };

    VerifyResult result;
    std::vector<Rational> inflow(n * m), outflow(n * m);
    std::vector<Rational> sideways(m);  // per-voter sideways total over x != c
    for (const auto& [edge, amount] : cert.flow) {
        const auto [from, to] = edge;
        if (from < 0 || from >= n * m || to < 0 || to >= n * m) {
            result.error = "edge " + describe(from) + " -> " + describe(to) + " out of range";
            return result;
        }
        const int vf = from / n, xf = from % n, vt = to / n, xt = to % n;
        if (amount < 0) {
            result.error =
                "negative flow on edge " + describe(from) + " -> " + describe(to);
            return result;
        }
        if (!graph.has_edge(vf, xf, vt, xt)) {
            result.error = "flow on non-edge " + describe(from) + " -> " + describe(to);
            return result;
        }
        inflow[to] += amount;
        outflow[from] += amount;
        if (vf != vt && xf != cert.c) {  // sideways edge, both endpoints pay
            sideways[vf] += amount;
            sideways[vt] += amount;
        }
    }

    for (int v = 0; v < m; ++v)
        for (int x = 0; x < n; ++x) {
            if (x == cert.c) continue;
            Rational net = inflow[v * n + x] - outflow[v * n + x];
            if (x == cert.w) net += 1;  // one unit originates here
            if (net != 0) {
                result.error = "conservation violated at " + describe(v * n + x) +
                               " (net " + format_rational(net) + ")";
                return result;
            }
        }

    result.voter_costs.resize(m);
    for (int v = 0; v < m; ++v) {
        Rational absorbed = inflow[v * n + cert.c] - outflow[v * n + cert.c];
        if (cert.w == cert.c) absorbed += 1;  // the unit born at the sink counts
        if (absorbed < 0) {
            result.error = "sink " + describe(v * n + cert.c) + " emits more than it absorbs";
            return result;
        }
        Rational sink_term = inflow[v * n + cert.c];
        if (cert.w == cert.c) sink_term += 1;
        result.voter_costs[v] = sink_term + sideways[v];
    }
    result.ok = true;
    result.max_voter_cost = *std::max_element(result.voter_costs.begin(), result.voter_costs.end());
    return result;
}

FlowCertificate chain_flow(const VoteProfile& profile, const std::vector<int>& path) {
    const int m = profile.voters();
    if (path.empty()) throw std::invalid_argument("chain_flow: empty path");
    {
        std::vector<bool> seen(profile.candidates(), false);
        for (int x : path) {
            if (x < 0 || x >= profile.candidates())
                throw std::invalid_argument("chain_flow: candidate out of range");
            if (seen[x]) throw std::invalid_argument("chain_flow: path candidates must be distinct");
            seen[x] = true;
        }
    }

    FlowCertificate cert{profile, path.front(), path.back(), {}};
    // holdings[v] = flow currently sitting at (v, path[step])
    std::vector<Rational> holding(m, Rational(1));
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
        const int here = path[step];
        const int next = path[step + 1];
        std::vector<bool> forward(m);
        int count = 0;
        for (int v = 0; v < m; ++v) {
            forward[v] = profile.prefers(v, here, next);
            count += forward[v];
        }
        if (count == 0)
            throw std::invalid_argument("chain_flow: no voter prefers step " +
                                        std::to_string(step + 1) + " over step " +
                                        std::to_string(step + 2) + " of the path");
        const Rational target = Rational(m) / count;

        // Rebalance inside the layer. Voters moving on keep what they can;
        // excess is matched to deficits in voter-index order.
        std::vector<Rational> excess(m), deficit(m);
        for (int v = 0; v < m; ++v) {
            Rational keep = forward[v] ? std::min(holding[v], target) : Rational(0);
            excess[v] = holding[v] - keep;
            if (forward[v]) deficit[v] = target - keep;
        }
        int donor = 0;
        for (int v = 0; v < m; ++v) {
            while (deficit[v] > 0) {
                while (donor < m && excess[donor] == 0) ++donor;
                if (donor >= m) throw std::logic_error("chain_flow: rebalancing ran dry");
                Rational moved = std::min(excess[donor], deficit[v]);
                cert.add(donor, here, v, here, moved);
                excess[donor] -= moved;
                deficit[v] -= moved;
            }
        }

        // Advance along preference edges.
        for (int v = 0; v < m; ++v) {
            if (forward[v]) {
                cert.add(v, here, v, next, target);
                holding[v] = target;
            } else {
                holding[v] = 0;
            }
        }
    }
    return cert;
}

FlowCertificate matching_flow(const VoteProfile& profile, int w, int c,
                              const std::vector<int>& matching,
                              const std::vector<int>& intermediates) {
    const int m = profile.voters();
    if (static_cast<int>(matching.size()) != m || static_cast<int>(intermediates.size()) != m)
        throw std::invalid_argument("matching_flow: need one match and one intermediate per voter");
    {
        std::vector<bool> hit(m, false);
        for (int v2 : matching) {
            if (v2 < 0 || v2 >= m || hit[v2])
                throw std::invalid_argument("matching_flow: matching is not a bijection on voters");
            hit[v2] = true;
        }
    }

    FlowCertificate cert{profile, w, c, {}};
    for (int v = 0; v < m; ++v) {
        const int z = intermediates[v];
        const int v2 = matching[v];
        if (z < 0 || z >= profile.candidates())
            throw std::invalid_argument("matching_flow: intermediate out of range for voter " +
                                        std::to_string(v + 1));
        if (!profile.weakly_prefers(v, w, z))
            throw std::invalid_argument("matching_flow: voter " + std::to_string(v + 1) +
                                        " does not weakly prefer the winner over her intermediate");
        if (!profile.weakly_prefers(v2, z, c))
            throw std::invalid_argument("matching_flow: voter " + std::to_string(v2 + 1) +
                                        " does not weakly prefer the intermediate of voter " +
                                        std::to_string(v + 1) + " over the sink candidate");
        const Rational one(1);
        if (z != w) cert.add(v, w, v, z, one);
        if (v2 != v) cert.add(v, z, v2, z, one);
        if (z != c) cert.add(v2, z, v2, c, one);
    }
    return cert;
}

std::string write_certificate(const FlowCertificate& cert) {
    const int n = cert.profile.candidates();
    std::ostringstream out;
    out << "hash " << std::hex << profile_hash(cert.profile) << std::dec << '\n';
    out << "pair " << cert.w << ' ' << cert.c << '\n';
    for (const auto& [edge, amount] : cert.flow)
        out << edge.first / n << ' ' << edge.first % n << ' ' << edge.second / n << ' '
            << edge.second % n << ' ' << format_rational(amount) << '\n';
    return out.str();
}

FlowCertificate parse_certificate(std::istream& in, const VoteProfile& profile) {
    std::string word;
    std::uint64_t hash = 0;
    if (!(in >> word) || word != "hash" || !(in >> std::hex >> hash >> std::dec))
        throw std::runtime_error("certificate: missing hash header");
    if (hash != profile_hash(profile))
        throw std::runtime_error("certificate is bound to a different profile");
    int w = -1, c = -1;
    if (!(in >> word) || word != "pair" || !(in >> w >> c))
        throw std::runtime_error("certificate: missing pair header");
    if (w < 0 || w >= profile.candidates() || c < 0 || c >= profile.candidates())
        throw std::runtime_error("certificate: candidate pair out of range");

    FlowCertificate cert{profile, w, c, {}};
    int vf, xf, vt, xt;
    std::string amount;
    while (in >> vf >> xf >> vt >> xt >> amount)
        cert.add(vf, xf, vt, xt, parse_rational(amount));
    if (!in.eof() && in.fail())
        throw std::runtime_error("certificate: malformed edge line");
    return cert;
}

}  // namespace mdist
