#include "mdist/lp.hpp"

#include <gmpxx.h>

#include <climits>
#include <sstream>
#include <stdexcept>

namespace mdist {

void LinearProgram::add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars)
        throw std::invalid_argument("lp row has wrong width");
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// GMP carries the solver's arithmetic; the public types stay on Rational.
mpq_class to_mpq(const Rational& q) {
    const BigInt& num = numerator(q);
    const BigInt& den = denominator(q);
    if (num >= LONG_MIN && num <= LONG_MAX && den <= LONG_MAX) {
        mpq_class r(num.convert_to<long>(), den.convert_to<long>());
        r.canonicalize();
        return r;
    }
    mpq_class r(q.str());
    r.canonicalize();
    return r;
}

Rational from_mpq(const mpq_class& q) {
    return Rational(BigInt(q.get_num().get_str()), BigInt(q.get_den().get_str()));
}

// Condensed-dictionary simplex over exact rationals. All constraints are
// brought into a.x <= b form; the dictionary D keeps one column per
// structural variable plus the phase-1 auxiliary column and the right-hand
// side, so a pivot costs O(rows * vars) instead of O(rows * (rows + vars)).
//
// Variable ids: 0..C-1 structural, C..C+R-1 slacks, -1 the auxiliary.
// Pricing is steepest-coefficient (most negative reduced cost, smallest id
// on ties) while the objective moves; a streak of degenerate pivots switches
// to Bland's smallest-index rule, which provably escapes any plateau, and a
// strict improvement switches back. Improvements are finite and each plateau
// ends, so the solver terminates unconditionally.
class Simplex {
public:
    Simplex(std::vector<std::vector<Rational>> lhs, std::vector<Rational> rhs, int vars,
            const std::vector<Rational>& objective)
        : R_(static_cast<int>(lhs.size())), C_(vars), stall_limit_(12 * (vars + 2) + 32) {
        D_.assign(R_ + 2, std::vector<mpq_class>(C_ + 2));
        basic_.resize(R_);
        nonbasic_.resize(C_ + 1);
        for (int i = 0; i < R_; ++i) {
            for (int j = 0; j < C_; ++j) D_[i][j] = to_mpq(lhs[i][j]);
            D_[i][C_] = -1;  // auxiliary column
            D_[i][C_ + 1] = to_mpq(rhs[i]);
            basic_[i] = C_ + i;
        }
        for (int j = 0; j < C_; ++j) {
            nonbasic_[j] = j;
            D_[R_][j] = -to_mpq(objective[j]);
        }
        nonbasic_[C_] = kAux;
        D_[R_ + 1][C_] = 1;  // phase-1 objective: maximize -aux
    }

    LpStatus run() {
        int worst = -1;
        for (int i = 0; i < R_; ++i)
            if (worst == -1 || D_[i][C_ + 1] < D_[worst][C_ + 1]) worst = i;
        if (worst != -1 && D_[worst][C_ + 1] < 0) {
            pivot(worst, C_);  // auxiliary enters, restoring b >= 0
            if (!optimize(R_ + 1, kNoSkip))
                throw std::logic_error("phase-1 objective cannot be unbounded");
            if (D_[R_ + 1][C_ + 1] < 0) return LpStatus::Infeasible;
            for (int i = 0; i < R_; ++i)
                if (basic_[i] == kAux) drive_aux_out(i);
        }
        if (!optimize(R_, kAux)) return LpStatus::Unbounded;
        return LpStatus::Optimal;
    }

    Rational objective_value() const { return from_mpq(D_[R_][C_ + 1]); }

    std::vector<Rational> assignment() const {
        std::vector<Rational> x(C_);
        for (int i = 0; i < R_; ++i)
            if (basic_[i] >= 0 && basic_[i] < C_) x[basic_[i]] = from_mpq(D_[i][C_ + 1]);
        return x;
    }

private:
    static constexpr int kAux = -1;
    static constexpr int kNoSkip = -2;

    int select_entering(int obj_row, int skip_id, bool bland) const {
        int s = -1;
        for (int j = 0; j <= C_; ++j) {
            if (nonbasic_[j] == skip_id) continue;
            if (D_[obj_row][j] >= 0) continue;
            if (s == -1) {
                s = j;
                continue;
            }
            if (bland) {
                if (nonbasic_[j] < nonbasic_[s]) s = j;
            } else if (D_[obj_row][j] < D_[obj_row][s] ||
                       (D_[obj_row][j] == D_[obj_row][s] && nonbasic_[j] < nonbasic_[s])) {
                s = j;
            }
        }
        return s;
    }

    // Maximizes the objective stored in row `obj_row`. Returns false when an
    // improving direction is unbounded.
    bool optimize(int obj_row, int skip_id) {
        int stall = 0;
        for (;;) {
            const int s = select_entering(obj_row, skip_id, stall > stall_limit_);
            if (s == -1) return true;
            int r = -1;
            for (int i = 0; i < R_; ++i) {
                if (D_[i][s] <= 0) continue;
                if (r == -1) {
                    r = i;
                    continue;
                }
                // ratio_i < ratio_r without divisions; both pivots positive
                const mpq_class lhs = D_[i][C_ + 1] * D_[r][s];
                const mpq_class rhs = D_[r][C_ + 1] * D_[i][s];
                if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
            }
            if (r == -1) return false;
            if (D_[r][C_ + 1] == 0)
                ++stall;
            else
                stall = 0;
            pivot(r, s);
        }
    }

    void pivot(int r, int s) {
        const mpq_class inv = 1 / D_[r][s];
        for (int i = 0; i < R_ + 2; ++i) {
            if (i == r || D_[i][s] == 0) continue;
            const mpq_class factor = D_[i][s] * inv;
            auto& row = D_[i];
            const auto& prow = D_[r];
            for (int j = 0; j < C_ + 2; ++j)
                if (prow[j] != 0) row[j] -= prow[j] * factor;
            row[s] = prow[s] * factor;
        }
        for (int j = 0; j < C_ + 2; ++j)
            if (j != s) D_[r][j] *= inv;
        for (int i = 0; i < R_ + 2; ++i)
            if (i != r) D_[i][s] *= -inv;
        D_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    // The auxiliary sits in the basis at value zero; exchange it for any
    // nonbasic variable with a nonzero entry. An all-zero row is redundant
    // and may keep the auxiliary, where it never participates again.
    void drive_aux_out(int row) {
        int s = -1;
        for (int j = 0; j <= C_; ++j)
            if (D_[row][j] != 0 && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
        if (s != -1) pivot(row, s);
    }

    int R_, C_;
    int stall_limit_;
    std::vector<std::vector<mpq_class>> D_;
    std::vector<int> basic_, nonbasic_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    std::vector<std::vector<Rational>> lhs;
    std::vector<Rational> rhs;
    auto push = [&](const std::vector<Rational>& coeffs, const Rational& b, bool negate) {
        auto& row = lhs.emplace_back(coeffs);
        rhs.push_back(b);
        if (negate) {
            for (auto& a : row) a = -a;
            rhs.back() = -rhs.back();
        }
    };
    for (const auto& row : lp.rows) {
        switch (row.rel) {
            case Relation::LessEq: push(row.coeffs, row.rhs, false); break;
            case Relation::GreaterEq: push(row.coeffs, row.rhs, true); break;
            case Relation::Equal:
                push(row.coeffs, row.rhs, false);
                push(row.coeffs, row.rhs, true);
                break;
        }
    }

    Simplex simplex(std::move(lhs), std::move(rhs), lp.num_vars, lp.objective);
    LpSolution solution;
    solution.status = simplex.run();
    if (solution.status == LpStatus::Optimal) {
        solution.objective = simplex.objective_value();
        solution.assignment = simplex.assignment();
    }
    return solution;
}

std::string write_lp(const LinearProgram& lp) {
    std::ostringstream out;
    out << "vars " << lp.num_vars << '\n';
    out << "max";
    for (const auto& c : lp.objective) out << ' ' << format_rational(c);
    out << '\n';
    for (const auto& row : lp.rows) {
        for (size_t j = 0; j < row.coeffs.size(); ++j)
            out << (j ? " " : "") << format_rational(row.coeffs[j]);
        switch (row.rel) {
            case Relation::LessEq: out << " <= "; break;
            case Relation::Equal: out << " = "; break;
            case Relation::GreaterEq: out << " >= "; break;
        }
        out << format_rational(row.rhs) << '\n';
    }
    return out.str();
}

}  // namespace mdist
