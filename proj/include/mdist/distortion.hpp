#pragma once

#include "mdist/lp.hpp"
#include "mdist/profile.hpp"

namespace mdist {

// The adversary's problem for a winner w and putative optimum c: over all
// metrics consistent with the profile, maximize w's social cost subject to
// c's cost being 1 and no candidate costing less than 1. Variables are the
// voter-candidate distances, indexed candidate-major: var(x,v) = x*m + v.
//
// Triangle rows appear for every ordered quadruple (x,y,v,v'); consistency
// rows only for ranking-adjacent pairs, which imply the rest by transitivity.
LinearProgram build_distortion_lp(const VoteProfile& profile, int w, int c);

// Thrown when the adversary can make w arbitrarily expensive relative to c.
// That happens exactly when no certificate flow can route the units from the
// w copies to the c copies; the scaled-down-optimum metric then scales the
// ratio without limit. Example: two candidates, every voter preferring c.
struct UnboundedDistortion : std::runtime_error {
    UnboundedDistortion(int w, int c)
        : std::runtime_error("distortion of candidate " + std::to_string(w) +
                             " against candidate " + std::to_string(c) + " is unbounded"),
          w(w), c(c) {}
    int w, c;
};

// Maximum LP objective: the worst-case cost ratio of w against c, >= 1.
// Throws UnboundedDistortion when no finite bound exists. The LP is never
// infeasible (the scaled-rank metric d(v,x) = n + rank_v(x), renormalized,
// always satisfies it); that status throws std::logic_error.
Rational opt_dist(const VoteProfile& profile, int w, int c);

// max_c opt_dist(w, c): the distortion of choosing w for this profile.
// Throws UnboundedDistortion when some rival admits no finite bound.
Rational w_opt_dist(const VoteProfile& profile, int w);

// Lowest-index minimizer of w_opt_dist and its value; candidates with
// unbounded distortion never minimize. `workers` caps the number of threads
// sweeping the candidate grid; the argmin reduction is deterministic
// regardless of the worker count.
std::pair<int, Rational> lp_optimal_winner(const VoteProfile& profile, int workers = 1);

// The maximizing metric itself, reassembled from the LP solution. Passes
// check_triangle and check_consistency; cost(c) = 1 and cost(w) = opt_dist.
PseudoMetric worst_case_metric(const VoteProfile& profile, int w, int c);

}  // namespace mdist
