#pragma once

#include "mdist/rational.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mdist {

enum class Relation { LessEq, Equal, GreaterEq };

// Maximization LP over nonnegative variables, all data exact rationals.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;  // maximize objective . x

    struct Row {
        std::vector<Rational> coeffs;
        Relation rel = Relation::LessEq;
        Rational rhs;
    };
    std::vector<Row> rows;

    explicit LinearProgram(int vars = 0) : num_vars(vars), objective(vars) {}
    void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;                // valid when Optimal
    std::vector<Rational> assignment;  // valid when Optimal
};

// Exact primal simplex on the condensed dictionary. Bland's smallest-index
// anti-cycling rule decides every pivot, so termination is unconditional.
LpSolution solve_lp(const LinearProgram& lp);

// Plain-text dump, one constraint per line, for external cross-validation.
std::string write_lp(const LinearProgram& lp);

}  // namespace mdist
