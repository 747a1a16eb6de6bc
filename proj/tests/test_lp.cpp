#include "doctest.h"

#include "lp_enum_oracle.hpp"
#include "mdist/lp.hpp"

#include <random>

using namespace mdist;

TEST_CASE("one-variable programs") {
    LinearProgram bounded(1);
    bounded.objective[0] = 1;
    bounded.add_row({Rational(1)}, Relation::LessEq, 3);
    auto sol = solve_lp(bounded);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == 3);
    CHECK(sol.assignment[0] == 3);

    LinearProgram unbounded(1);
    unbounded.objective[0] = 1;
    CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

    LinearProgram infeasible(1);
    infeasible.add_row({Rational(1)}, Relation::LessEq, -1);
    CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

    LinearProgram pinned(1);
    pinned.objective[0] = 1;
    pinned.add_row({Rational(1)}, Relation::Equal, 1);
    auto pinned_sol = solve_lp(pinned);
    REQUIRE(pinned_sol.status == LpStatus::Optimal);
    CHECK(pinned_sol.objective == 1);
}

TEST_CASE("greater-equal rows and equalities combine") {
    // max x + y st x + y <= 4, x >= 1, y = 2  ->  x = 2, y = 2
    LinearProgram lp(2);
    lp.objective = {Rational(1), Rational(1)};
    lp.add_row({Rational(1), Rational(1)}, Relation::LessEq, 4);
    lp.add_row({Rational(1), Rational(0)}, Relation::GreaterEq, 1);
    lp.add_row({Rational(0), Rational(1)}, Relation::Equal, 2);
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == 4);
    CHECK(sol.assignment[1] == 2);
}

TEST_CASE("classic degenerate program terminates under the anti-cycling rule") {
    // A textbook cycling trap for naive pivot rules; optimum 1/20.
    LinearProgram lp(4);
    lp.objective = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
    lp.add_row({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, Relation::LessEq, 0);
    lp.add_row({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, Relation::LessEq, 0);
    lp.add_row({Rational(0), Rational(0), Rational(1), Rational(0)}, Relation::LessEq, 1);
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rational(1, 20));
}

TEST_CASE("solver agrees with vertex enumeration on random bounded programs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 120; ++trial) {
        const int vars = 1 + static_cast<int>(rng() % 4);
        const int rows = 1 + static_cast<int>(rng() % 5);
        LinearProgram lp(vars);
        for (auto& c : lp.objective) c = Rational(static_cast<int>(rng() % 11) - 5);
        for (int r = 0; r < rows; ++r) {
            std::vector<Rational> coeffs(vars);
            for (auto& a : coeffs) a = Rational(static_cast<int>(rng() % 9) - 4);
            auto rel = static_cast<Relation>(rng() % 3);
            lp.add_row(std::move(coeffs), rel, Rational(static_cast<int>(rng() % 13) - 3));
        }
        // Bounding box keeps the program bounded so the vertex oracle is exact.
        for (int i = 0; i < vars; ++i) {
            std::vector<Rational> e(vars);
            e[i] = 1;
            lp.add_row(std::move(e), Relation::LessEq, 10);
        }

        auto sol = solve_lp(lp);
        auto oracle = mdist_test::enumerate_vertices(lp);
        if (oracle.feasible) {
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.objective == oracle.best);
            // The reported assignment must satisfy every row exactly and
            // attain the objective.
            Rational value = 0;
            for (int i = 0; i < vars; ++i) {
                CHECK(sol.assignment[i] >= 0);
                value += lp.objective[i] * sol.assignment[i];
            }
            CHECK(value == sol.objective);
            for (const auto& row : lp.rows) {
                Rational lhs = 0;
                for (int i = 0; i < vars; ++i) lhs += row.coeffs[i] * sol.assignment[i];
                switch (row.rel) {
                    case Relation::LessEq: CHECK(lhs <= row.rhs); break;
                    case Relation::Equal: CHECK(lhs == row.rhs); break;
                    case Relation::GreaterEq: CHECK(lhs >= row.rhs); break;
                }
            }
        } else {
            CHECK(sol.status == LpStatus::Infeasible);
        }
    }
}

TEST_CASE("lp dump lists one constraint per line") {
    LinearProgram lp(2);
    lp.objective = {Rational(1), Rational(1, 2)};
    lp.add_row({Rational(1), Rational(-1)}, Relation::LessEq, Rational(2, 3));
    lp.add_row({Rational(0), Rational(1)}, Relation::GreaterEq, 1);
    CHECK(write_lp(lp) == "vars 2\nmax 1 1/2\n1 -1 <= 2/3\n0 1 >= 1\n");
}
