#include "gaugekit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaugekit {

namespace {

// Standard-form problem: min c^T z, A z = b, z >= 0, b >= 0.
struct StandardForm {
    int m = 0, n = 0;            // rows, structural columns (before artificials)
    std::vector<Vec> a;          // m rows of length n
    Vec b;
    Vec c;
    // mapping back to the original variables:
    // x_orig[i] = shift[i] + sum over (col,sign) in parts[i] of sign*z[col]
    struct Part {
        int col;
        double sign;
    };
    std::vector<std::vector<Part>> parts;
    Vec shift;
    std::vector<double> row_flip;  // +-1 per standard row
    std::vector<int> row_origin;   // original row index, or -1 for bound rows
};

StandardForm to_standard(const LPProblem& p) {
    StandardForm s;
    s.parts.resize(std::size_t(p.num_vars));
    s.shift.assign(std::size_t(p.num_vars), 0.0);
    Vec cost = p.objective;
    if (p.maximize)
        for (auto& ci : cost) ci = -ci;

    // Variable translation: finite lower bounds are shifted away, free
    // variables split into a difference of nonnegatives, finite uppers
    // become extra rows.
    struct PendingRow {
        Vec coeffs;
        RowSense sense;
        double rhs;
        int origin;
    };
    std::vector<PendingRow> pending;
    int ncols = 0;
    for (int i = 0; i < p.num_vars; ++i) {
        double lo = p.lower[std::size_t(i)], up = p.upper[std::size_t(i)];
        if (lo > up) throw ValidationError("lp_solve: variable " + std::to_string(i) + " has empty bounds");
        if (lo == -kInf) {
            s.parts[std::size_t(i)] = {{ncols, 1.0}, {ncols + 1, -1.0}};
            ncols += 2;
        } else {
            s.shift[std::size_t(i)] = lo;
            s.parts[std::size_t(i)] = {{ncols, 1.0}};
            ncols += 1;
        }
        if (up != kInf) {
            Vec coeffs(std::size_t(p.num_vars), 0.0);
            coeffs[std::size_t(i)] = 1.0;
            pending.push_back({std::move(coeffs), RowSense::le, up, -1});
        }
    }
    for (std::size_t r = 0; r < p.rows.size(); ++r)
        pending.push_back({p.rows[r], p.senses[r], p.rhs[r], int(r)});

    // Expand each pending row over the translated variables, then add a
    // slack/surplus column for inequalities and normalize to b >= 0.
    s.n = ncols;
    for (auto& row : pending) {
        Vec std_row(std::size_t(s.n), 0.0);
        double rhs = row.rhs;
        for (int i = 0; i < p.num_vars; ++i) {
            double a = row.coeffs[std::size_t(i)];
            if (a == 0.0) continue;
            rhs -= a * s.shift[std::size_t(i)];
            for (const auto& part : s.parts[std::size_t(i)])
                std_row[std::size_t(part.col)] += a * part.sign;
        }
        double flip = 1.0;
        RowSense sense = row.sense;
        if (rhs < 0.0) {
            flip = -1.0;
            rhs = -rhs;
            for (auto& a : std_row) a = -a;
            if (sense == RowSense::le) sense = RowSense::ge;
            else if (sense == RowSense::ge) sense = RowSense::le;
        }
        if (sense != RowSense::eq) {
            std_row.push_back(sense == RowSense::le ? 1.0 : -1.0);
            for (auto& other : s.a) other.push_back(0.0);
            ++s.n;
        }
        std_row.resize(std::size_t(s.n), 0.0);
        s.a.push_back(std::move(std_row));
        s.b.push_back(rhs);
        s.row_flip.push_back(flip);
        s.row_origin.push_back(row.origin);
        ++s.m;
    }
    for (auto& r : s.a) r.resize(std::size_t(s.n), 0.0);

    s.c.assign(std::size_t(s.n), 0.0);
    for (int i = 0; i < p.num_vars; ++i)
        for (const auto& part : s.parts[std::size_t(i)])
            s.c[std::size_t(part.col)] += cost[std::size_t(i)] * part.sign;
    return s;
}

constexpr double kEnterTol = 1e-9;
constexpr double kPivotTol = 1e-11;

struct Tableau {
    int m, n;            // n includes the m artificial columns at the end
    std::vector<Vec> t;  // m rows of length n+1 (rhs last)
    Vec obj;             // reduced-cost row, length n+1 (negated objective value last)
    std::vector<int> basis;

    double& at(int i, int j) { return t[std::size_t(i)][std::size_t(j)]; }
    double at(int i, int j) const { return t[std::size_t(i)][std::size_t(j)]; }

    void pivot(int pr, int pc) {
        double inv = 1.0 / at(pr, pc);
        for (int j = 0; j <= n; ++j) at(pr, j) *= inv;
        at(pr, pc) = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            double f = at(i, pc);
            if (f == 0.0) continue;
            for (int j = 0; j <= n; ++j) at(i, j) -= f * at(pr, j);
            at(i, pc) = 0.0;
        }
        double f = obj[std::size_t(pc)];
        if (f != 0.0) {
            for (int j = 0; j <= n; ++j) obj[std::size_t(j)] -= f * at(pr, j);
            obj[std::size_t(pc)] = 0.0;
        }
        basis[std::size_t(pr)] = pc;
    }

    // Returns true at optimality, false on unbounded.
    bool run(const std::vector<bool>& eligible, bool bland, long max_iters, long& iters) {
        while (true) {
            int enter = -1;
            double best = -kEnterTol;
            for (int j = 0; j < n; ++j) {
                if (!eligible[std::size_t(j)]) continue;
                double r = obj[std::size_t(j)];
                if (r < best) {
                    best = r;
                    enter = j;
                    if (bland) break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best_ratio = kInf;
            for (int i = 0; i < m; ++i) {
                double aij = at(i, enter);
                if (aij <= kPivotTol) continue;
                double ratio = at(i, n) / aij;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && leave >= 0 &&
                     basis[std::size_t(i)] < basis[std::size_t(leave)])) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
            if (++iters > max_iters) throw DegenerateError("simplex: pivot budget exhausted");
        }
    }
};

struct SimplexResult {
    LPStatus status;
    Vec z;     // standard-form solution
    Vec y;     // row multipliers, standard form min orientation
    long iterations;
};

SimplexResult simplex_standard(const StandardForm& s, bool bland) {
    Tableau tab;
    tab.m = s.m;
    tab.n = s.n + s.m; // artificial columns appended; kept for dual readout
    tab.t.assign(std::size_t(s.m), Vec(std::size_t(tab.n) + 1, 0.0));
    tab.basis.resize(std::size_t(s.m));
    for (int i = 0; i < s.m; ++i) {
        for (int j = 0; j < s.n; ++j) tab.at(i, j) = s.a[std::size_t(i)][std::size_t(j)];
        tab.at(i, s.n + i) = 1.0;
        tab.at(i, tab.n) = s.b[std::size_t(i)];
        tab.basis[std::size_t(i)] = s.n + i;
    }

    long iters = 0;
    const long cap = bland ? 400000 : 4000 + 40L * (s.m + s.n);
    std::vector<bool> eligible(std::size_t(tab.n), true);

    // Phase 1: drive the artificial variables to zero.
    tab.obj.assign(std::size_t(tab.n) + 1, 0.0);
    for (int j = s.n; j < tab.n; ++j) tab.obj[std::size_t(j)] = 1.0;
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j <= tab.n; ++j) tab.obj[std::size_t(j)] -= tab.at(i, j);
    tab.run(eligible, bland, cap, iters);

    double scale = 1.0;
    for (double bi : s.b) scale = std::max(scale, std::abs(bi));
    if (-tab.obj[std::size_t(tab.n)] > 1e-7 * scale)
        return {LPStatus::infeasible, {}, {}, iters};

    // Pivot lingering artificials out of the basis where possible.
    for (int i = 0; i < s.m; ++i) {
        if (tab.basis[std::size_t(i)] < s.n) continue;
        int col = -1;
        for (int j = 0; j < s.n; ++j)
            if (std::abs(tab.at(i, j)) > 1e-7) {
                col = j;
                break;
            }
        if (col >= 0) tab.pivot(i, col);
    }

    // Phase 2 on the true objective; artificial columns stay in the tableau
    // (their reduced costs expose the duals) but may not re-enter.
    for (int j = s.n; j < tab.n; ++j) eligible[std::size_t(j)] = false;
    tab.obj.assign(std::size_t(tab.n) + 1, 0.0);
    for (int j = 0; j < s.n; ++j) tab.obj[std::size_t(j)] = s.c[std::size_t(j)];
    for (int i = 0; i < s.m; ++i) {
        int bi = tab.basis[std::size_t(i)];
        double cb = bi < s.n ? s.c[std::size_t(bi)] : 0.0;
        if (cb == 0.0) continue;
        for (int j = 0; j <= tab.n; ++j) tab.obj[std::size_t(j)] -= cb * tab.at(i, j);
    }
    bool optimal = tab.run(eligible, bland, cap, iters);
    if (!optimal) return {LPStatus::unbounded, {}, {}, iters};

    Vec z(std::size_t(s.n), 0.0);
    for (int i = 0; i < s.m; ++i)
        if (tab.basis[std::size_t(i)] < s.n)
            z[std::size_t(tab.basis[std::size_t(i)])] = tab.at(i, tab.n);
    Vec y(std::size_t(s.m));
    for (int i = 0; i < s.m; ++i) y[std::size_t(i)] = -tab.obj[std::size_t(s.n + i)];
    return {LPStatus::optimal, std::move(z), std::move(y), iters};
}

} // namespace

LPSolution lp_solve(const LPProblem& p) {
    if (p.objective.size() != std::size_t(p.num_vars) || p.lower.size() != std::size_t(p.num_vars) ||
        p.upper.size() != std::size_t(p.num_vars))
        throw ValidationError("lp_solve: inconsistent variable arrays");
    for (std::size_t r = 0; r < p.rows.size(); ++r)
        if (p.rows[r].size() != std::size_t(p.num_vars))
            throw ValidationError("lp_solve: row " + std::to_string(r) + " has wrong length");

    StandardForm s = to_standard(p);
    SimplexResult res = [&] {
        try {
            return simplex_standard(s, false);
        } catch (const DegenerateError&) {
            return simplex_standard(s, true); // Bland's rule retry
        }
    }();

    LPSolution sol;
    sol.status = res.status;
    sol.iterations = int(res.iterations);
    if (res.status != LPStatus::optimal) return sol;

    sol.x.assign(std::size_t(p.num_vars), 0.0);
    for (int i = 0; i < p.num_vars; ++i) {
        double v = s.shift[std::size_t(i)];
        for (const auto& part : s.parts[std::size_t(i)])
            v += part.sign * res.z[std::size_t(part.col)];
        sol.x[std::size_t(i)] = v;
    }
    double std_obj = 0.0;
    for (int j = 0; j < s.n; ++j) std_obj += s.c[std::size_t(j)] * res.z[std::size_t(j)];
    // Bound shifts moved a constant out of the objective; restore it.
    double obj_min = std_obj;
    for (int i = 0; i < p.num_vars; ++i) {
        double ci = p.maximize ? -p.objective[std::size_t(i)] : p.objective[std::size_t(i)];
        obj_min += ci * s.shift[std::size_t(i)];
    }
    sol.objective = p.maximize ? -obj_min : obj_min;

    sol.dual.assign(p.rows.size(), 0.0);
    double dual_obj = 0.0;
    for (int i = 0; i < s.m; ++i) {
        dual_obj += res.y[std::size_t(i)] * s.b[std::size_t(i)];
        int orig = s.row_origin[std::size_t(i)];
        if (orig >= 0) sol.dual[std::size_t(orig)] = res.y[std::size_t(i)] * s.row_flip[std::size_t(i)];
    }
    sol.duality_gap = std::abs(std_obj - dual_obj) / std::max(1.0, std::abs(std_obj));

    for (std::size_t r = 0; r < p.rows.size(); ++r) {
        double lhs = 0.0;
        for (int i = 0; i < p.num_vars; ++i) lhs += p.rows[r][std::size_t(i)] * sol.x[std::size_t(i)];
        double viol = 0.0;
        if (p.senses[r] == RowSense::le) viol = lhs - p.rhs[r];
        else if (p.senses[r] == RowSense::ge) viol = p.rhs[r] - lhs;
        else viol = std::abs(lhs - p.rhs[r]);
        sol.primal_residual = std::max(sol.primal_residual, viol);
    }
    for (int i = 0; i < p.num_vars; ++i) {
        sol.primal_residual = std::max(sol.primal_residual, p.lower[std::size_t(i)] - sol.x[std::size_t(i)]);
        sol.primal_residual = std::max(sol.primal_residual, sol.x[std::size_t(i)] - p.upper[std::size_t(i)]);
    }
    sol.primal_residual = std::max(sol.primal_residual, 0.0);
    return sol;
}

} // namespace gaugekit
