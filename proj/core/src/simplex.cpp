#include "jsr/simplex.hpp"

#include <cmath>

#include "jsr/errors.hpp"

namespace jsr {

namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
    int rows = 0;  // constraints
    int cols = 0;  // structural + slack + artificial
    std::vector<double> a;  // rows x cols
    Vec rhs;
    std::vector<int> basis;  // basic variable per row

    double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    void pivot(int row, int col) {
        const double p = at(row, col);
        for (int j = 0; j < cols; ++j) at(row, j) /= p;
        rhs[row] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == row) continue;
            const double f = at(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) at(i, j) -= f * at(row, j);
            rhs[i] -= f * rhs[row];
        }
        basis[row] = col;
    }
};

// Bland's rule: entering column = smallest index with negative reduced cost;
// leaving row = min ratio, ties by smallest basic-variable index.
bool simplex_phase(Tableau& t, const Vec& cost, int max_iters, int& iters,
                   bool* unbounded) {
    *unbounded = false;
    while (iters < max_iters) {
        Vec reduced(static_cast<size_t>(t.cols));
        for (int j = 0; j < t.cols; ++j) {
            double r = cost[j];
            for (int i = 0; i < t.rows; ++i) {
                const double cb = cost[t.basis[i]];
                if (cb != 0.0) r -= cb * t.at(i, j);
            }
            reduced[j] = r;
        }
        int enter = -1;
        for (int j = 0; j < t.cols; ++j)
            if (reduced[j] < -kPivotTol) {
                enter = j;
                break;
            }
        if (enter < 0) return true;  // optimal
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < t.rows; ++i) {
            if (t.at(i, enter) <= kPivotTol) continue;
            const double ratio = t.rhs[i] / t.at(i, enter);
            if (leave < 0 || ratio < best_ratio - kPivotTol ||
                (std::abs(ratio - best_ratio) <= kPivotTol && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            *unbounded = true;
            return false;
        }
        t.pivot(leave, enter);
        ++iters;
    }
    return false;
}

}  // namespace

LpResult solve_lp(const Vec& objective, const std::vector<LpConstraint>& constraints,
                  const std::vector<bool>& nonneg) {
    const int n = static_cast<int>(objective.size());
    const int m = static_cast<int>(constraints.size());

    // map each variable to one column (nonneg) or a +/- pair (free)
    std::vector<int> pos_col(static_cast<size_t>(n)), neg_col(static_cast<size_t>(n), -1);
    int structural = 0;
    for (int v = 0; v < n; ++v) {
        pos_col[v] = structural++;
        if (!nonneg[v]) neg_col[v] = structural++;
    }

    int num_slack = 0;
    for (const auto& c : constraints)
        if (c.relation != '=') ++num_slack;

    Tableau t;
    t.rows = m;
    t.cols = structural + num_slack + m;  // one artificial per row at most
    t.a.assign(static_cast<size_t>(t.rows) * t.cols, 0.0);
    t.rhs.assign(static_cast<size_t>(m), 0.0);
    t.basis.assign(static_cast<size_t>(m), -1);

    int slack_at = structural;
    const int art_base = structural + num_slack;
    std::vector<bool> is_artificial(static_cast<size_t>(t.cols), false);
    int num_art = 0;

    for (int i = 0; i < m; ++i) {
        const LpConstraint& c = constraints[i];
        if (static_cast<int>(c.coeffs.size()) != n)
            throw InvalidInputError("solve_lp: constraint arity mismatch");
        double sgn = 1.0;
        char rel = c.relation;
        double rhs = c.rhs;
        if (rhs < 0.0) {
            sgn = -1.0;
            rhs = -rhs;
            if (rel == '<') rel = '>';
            else if (rel == '>') rel = '<';
        }
        for (int v = 0; v < n; ++v) {
            const double a = sgn * c.coeffs[v];
            t.at(i, pos_col[v]) = a;
            if (neg_col[v] >= 0) t.at(i, neg_col[v]) = -a;
        }
        t.rhs[i] = rhs;
        if (rel == '<') {
            t.at(i, slack_at) = 1.0;
            t.basis[i] = slack_at++;
        } else {
            if (rel == '>') t.at(i, slack_at++) = -1.0;
            const int art = art_base + num_art++;
            t.at(i, art) = 1.0;
            is_artificial[art] = true;
            t.basis[i] = art;
        }
    }

    LpResult result;
    const int max_iters = 2000 + 200 * (t.rows + t.cols);
    bool unbounded = false;

    if (num_art > 0) {
        Vec phase1(static_cast<size_t>(t.cols), 0.0);
        for (int j = 0; j < t.cols; ++j)
            if (is_artificial[j]) phase1[j] = 1.0;
        if (!simplex_phase(t, phase1, max_iters, result.iterations, &unbounded))
            throw NumericalFailureError("solve_lp: phase 1 did not terminate");
        double infeas = 0.0;
        for (int i = 0; i < t.rows; ++i)
            if (is_artificial[t.basis[i]]) infeas += t.rhs[i];
        if (infeas > 1e-8) {
            result.status = LpResult::Status::infeasible;
            return result;
        }
        // pivot any zero-level artificials out of the basis
        for (int i = 0; i < t.rows; ++i) {
            if (!is_artificial[t.basis[i]]) continue;
            int col = -1;
            for (int j = 0; j < art_base; ++j)
                if (std::abs(t.at(i, j)) > kPivotTol) {
                    col = j;
                    break;
                }
            if (col >= 0) t.pivot(i, col);
        }
        // drop artificial columns; rows still basic in an artificial are
        // redundant (all-zero structural part) and are dropped with them
        Tableau s;
        s.cols = art_base;
        for (int i = 0; i < t.rows; ++i) {
            if (is_artificial[t.basis[i]]) continue;
            for (int j = 0; j < art_base; ++j) s.a.push_back(t.at(i, j));
            s.rhs.push_back(t.rhs[i]);
            s.basis.push_back(t.basis[i]);
        }
        s.rows = static_cast<int>(s.basis.size());
        t = std::move(s);
    }

    Vec cost(static_cast<size_t>(t.cols), 0.0);
    for (int v = 0; v < n; ++v) {
        cost[pos_col[v]] = objective[v];
        if (neg_col[v] >= 0) cost[neg_col[v]] = -objective[v];
    }

    if (!simplex_phase(t, cost, max_iters, result.iterations, &unbounded)) {
        if (unbounded) {
            result.status = LpResult::Status::unbounded;
            return result;
        }
        throw NumericalFailureError("solve_lp: phase 2 did not terminate");
    }

    Vec full(static_cast<size_t>(t.cols), 0.0);
    for (int i = 0; i < t.rows; ++i) full[t.basis[i]] = t.rhs[i];
    result.x.assign(static_cast<size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        result.x[v] = full[pos_col[v]];
        if (neg_col[v] >= 0) result.x[v] -= full[neg_col[v]];
    }
    result.value = dot(objective, result.x);
    result.status = LpResult::Status::optimal;
    return result;
}

LpResult solve_lp(const Vec& objective, const std::vector<LpConstraint>& constraints) {
    return solve_lp(objective, constraints, std::vector<bool>(objective.size(), false));
}

}  // namespace jsr
