#pragma once

#include "mdist/profile.hpp"

#include <algorithm>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

namespace mdist {

// The certificate graph for a (winner, optimum) pair: one node per
// (voter, candidate), a preference edge (v,x) -> (v,y) whenever v prefers x
// over y, and a sideways edge (v,x) -> (v',x) for every candidate and every
// ordered voter pair. A unit of flow starts at each (v,w) and must end at
// the sink copies (v,c).
struct FlowGraph {
    VoteProfile profile;
    int w = 0;
    int c = 0;

    int node(int v, int x) const { return v * profile.candidates() + x; }
    int node_voter(int id) const { return id / profile.candidates(); }
    int node_candidate(int id) const { return id % profile.candidates(); }

    bool has_edge(int vf, int xf, int vt, int xt) const {
        if (vf == vt) return vf >= 0 && vf < profile.voters() && profile.prefers(vf, xf, xt);
        return xf == xt;
    }

    std::size_t preference_edge_count() const;
    std::size_t sideways_edge_count() const;
};

FlowGraph build_flow_graph(const VoteProfile& profile, int w, int c);

// Sparse flow on the certificate graph; only nonzero amounts are stored.
struct FlowCertificate {
    VoteProfile profile;
    int w = 0;
    int c = 0;
    // key: (from node, to node), node = voter * n + candidate
    std::map<std::pair<int, int>, Rational> flow;

    void add(int vf, int xf, int vt, int xt, const Rational& amount);
};

// Audits a certificate from its raw edge flows: every edge must exist in the
// graph, carry nonnegative flow, and conservation must hold at every node,
// with absorption only at the sink copies (v,c). The returned value is the
// maximum per-voter cost
//   flcost(v) = flow absorbed at (v,c)
//             + all sideways flow in or out of (v,x) over candidates x != c,
// which certifies cost(w) <= value * cost(c) for every metric consistent
// with the profile.
struct VerifyResult {
    bool ok = false;
    std::string error;                  // pinpoints the first violation
    Rational max_voter_cost;            // valid when ok
    std::vector<Rational> voter_costs;  // valid when ok
};

VerifyResult verify_certificate(const FlowCertificate& cert);

// The layered chain construction along a candidate path x_1 .. x_l: flow is
// rebalanced inside layer i with sideways edges from the voters preferring
// x_{i-1} over x_i onto those preferring x_i over x_{i+1} (donors and
// receivers paired greedily in voter-index order), then advances along
// preference edges. Rejects a path whose transition set V_i is empty.
FlowCertificate chain_flow(const VoteProfile& profile, const std::vector<int>& path);

// The matching construction: voter v routes its unit along
// (v,w) -> (v,z_v) -> (M(v),z_v) -> (M(v),c), omitting degenerate hops.
// Requires matching to be a bijection on voters and, for every v, that v
// weakly prefers w over z_v and M(v) weakly prefers z_v over c. The verified
// cost is at most 3.
FlowCertificate matching_flow(const VoteProfile& profile, int w, int c,
                              const std::vector<int>& matching,
                              const std::vector<int>& intermediates);

// Cost bound certified by a chain whose transition fractions are
// taus = (t_2, .., t_l): the maximum of sum lambda_i over index sets with no
// two consecutive members, where lambda_1 = 1, lambda_2 = 2/t_2 - 1 and
// lambda_i = 2/t_i beyond. Works on exact rationals or doubles.
template <typename Scalar>
Scalar lambda_bound(const std::vector<Scalar>& taus) {
    const int ell = static_cast<int>(taus.size()) + 1;
    for (const auto& t : taus)
        if (t <= 0 || t > Scalar(1))
            throw std::invalid_argument("lambda_bound: fractions must lie in (0,1]");
    std::vector<Scalar> lambda(ell + 1, Scalar(0));
    lambda[1] = Scalar(1);
    if (ell >= 2) lambda[2] = Scalar(2) / taus[0] - Scalar(1);
    for (int i = 3; i <= ell; ++i) lambda[i] = Scalar(2) / taus[i - 2];

    // max-weight independent set on a path
    Scalar with = lambda[1];  // best total using position i
    Scalar without = Scalar(0);
    for (int i = 2; i <= ell; ++i) {
        Scalar best = std::max(with, without);
        with = without + lambda[i];
        without = best;
    }
    return std::max(with, without);
}

// Closed form of lambda_bound for a constant fraction: l/t - 1 for even
// chain length, (l-1)/t + 1 for odd.
template <typename Scalar>
Scalar uniform_lambda(const Scalar& tau, int ell) {
    if (tau <= 0 || tau > Scalar(1))
        throw std::invalid_argument("uniform_lambda: fraction must lie in (0,1]");
    if (ell < 1) throw std::invalid_argument("uniform_lambda: chain length must be >= 1");
    if (ell % 2 == 0) return Scalar(ell) / tau - Scalar(1);
    return Scalar(ell - 1) / tau + Scalar(1);
}

// Dump format: "hash <hex>", "pair <w> <c>", then one line per edge
// "v x v' x' amount" with exact rationals. parse_certificate refuses a dump
// whose hash does not match the supplied profile.
std::string write_certificate(const FlowCertificate& cert);
FlowCertificate parse_certificate(std::istream& in, const VoteProfile& profile);

}  // namespace mdist
