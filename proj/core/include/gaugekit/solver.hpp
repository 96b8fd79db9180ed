#pragma once

#include <cstdint>
#include <vector>

#include "gaugekit/herm.hpp"

namespace gaugekit {

/// dist(A, -cone) minimization data. The cone is the positive-semidefinite
/// part of the real span of cone_basis; coset_basis (optional) adds
/// unconstrained directions for quotient problems.
struct ConeDistanceProblem {
    HermitianMatrix target;
    std::vector<HermitianMatrix> cone_basis;
    std::vector<HermitianMatrix> coset_basis;

    /// Checks dimensions and linear independence of the joint basis
    /// (Gram min-eigenvalue > 1e-10 under the trace pairing).
    void validate() const;
};

enum class StepRule { polyak_estimate, inv_sqrt };

struct SolverConfig {
    double tol = 1e-5;
    int max_iter = 20000;
    double penalty_mu = 0.0; // <= 0 selects the default 64 x initial objective
    StepRule step_rule = StepRule::polyak_estimate;
    std::uint64_t seed = 0;  // 0: deterministic zero start; else seeded random start
    double coset_box = 1e6;  // coset coordinates live in [-box, box], escalated x10 on hit
};

struct SolveReport {
    double value = 0.0;      // ||A + P(c*) + S(s*)||, an upper bound on the infimum
    Vec argmin_coeffs;       // cone coordinates first, then coset coordinates
    double infeasibility = 0.0; // max(0, -lambda_min(P(c*)))
    int iterations = 0;
    bool converged = false;
    Vec value_history_tail;  // last (up to) 10 penalized objective values
};

/// Exact-penalty subgradient descent on
///   F(c,s) = ||A + P(c) + S(s)|| + mu * max(0, -lambda_min(P(c))),
/// Polyak steps against a refreshed best-value estimate, inv-sqrt fallback
/// for non-improving runs. Deterministic per (problem, config).
SolveReport min_opnorm_over_cone(const ConeDistanceProblem& p, const SolverConfig& cfg);

/// Subgradient of c -> ||M + sum c_i B_i|| at c = 0: the vector
/// sign(lambda) <v, B_i v> for a dominant eigenpair (lambda, v) of M.
/// Ties between |lambda_min| and |lambda_max| resolve to lambda_max.
Vec opnorm_subgradient(const HermitianMatrix& m, const std::vector<HermitianMatrix>& basis);

/// Guards a claimed optimal value: random feasible perturbations around a
/// re-solved argmin must never beat claimed - 10 tol, and the re-solve from
/// a fresh seed must agree within 5 tol.
bool certify_value(const ConeDistanceProblem& p, double claimed, int probes, std::uint64_t seed,
                   const SolverConfig& cfg);

} // namespace gaugekit
