#pragma once

#include <limits>
#include <vector>

#include "gaugekit/errors.hpp"
#include "gaugekit/herm.hpp"

namespace gaugekit {

enum class RowSense { le, eq, ge };
enum class LPStatus { optimal, infeasible, unbounded };

constexpr double kInf = std::numeric_limits<double>::infinity();

/// min (or max) c^T x subject to row constraints and per-variable bounds.
struct LPProblem {
    int num_vars = 0;
    bool maximize = false;
    Vec objective;
    std::vector<Vec> rows;
    std::vector<RowSense> senses;
    Vec rhs;
    Vec lower, upper; // +-kInf allowed

    /// Returns the index of the new variable.
    int add_var(double lo, double up, double cost) {
        objective.push_back(cost);
        lower.push_back(lo);
        upper.push_back(up);
        return num_vars++;
    }
    void add_row(Vec coeffs, RowSense sense, double b) {
        rows.push_back(std::move(coeffs));
        senses.push_back(sense);
        rhs.push_back(b);
    }
};

struct LPSolution {
    LPStatus status = LPStatus::infeasible;
    double objective = 0.0; // in the orientation declared by the problem
    Vec x;
    Vec dual;               // one multiplier per original row (min orientation)
    double primal_residual = 0.0;
    double duality_gap = 0.0;
    int iterations = 0;
};

/// Dense two-phase simplex. Dantzig pricing with an iteration guard; on
/// guard exhaustion the solve restarts under Bland's rule, which cannot
/// cycle. If even that exceeds its cap, DegenerateError is thrown.
LPSolution lp_solve(const LPProblem& p);

} // namespace gaugekit
