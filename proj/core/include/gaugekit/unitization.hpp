#pragma once

#include <cstdint>
#include <optional>

#include "gaugekit/gauge.hpp"
#include "gaugekit/maps.hpp"
#include "gaugekit/spaces.hpp"

namespace gaugekit {

/// Scalar unitization gauge: nu1(x, lambda) = max(g(x) + lambda, 0).
/// The restriction at lambda = 0 returns g(x) exactly.
double nu1(const Gauge& g, const Vec& x, double lambda);

/// The order-unit gauge at level n: inf{ t > 0 : A <= t (I_n tensor e) },
/// equal to max(lambda_max(E^{-1/2} A E^{-1/2}), 0) for E the realized unit.
/// Requires a designated unit and membership of A in M_n(V)_sa.
double aou_gauge(const OperatorSpace& v, int n, const HermitianMatrix& a);

struct UnitizationOptions {
    double t_tol = 1e-6;        // absolute bisection tolerance on t
    int max_probes = 40;        // bisection step cap
    bool check_monotone = false; // assert feasibility is monotone on a 16-grid
    bool allow_fast_path = true; // closed forms for A = 0 and full spaces
};

/// The matrix unitization gauge u_n(A, X) =
///   inf{ t > 0 : tI - X pos. def., d_{n,V}((tI-X)^{-1/2} A (tI-X)^{-1/2}) <= 1 },
/// computed by bisection over t (feasibility is monotone in t). A lives in
/// M_n(V)_sa realized, X is a scalar Hermitian n x n matrix.
double u_n(const OperatorSpace& v, int n, const HermitianMatrix& a, const HermitianMatrix& x_scalar,
           const SolverConfig& cfg, const UnitizationOptions& opts = {});

/// The unitization of V packaged with its gauge family.
class UnitizedSpace {
public:
    explicit UnitizedSpace(OperatorSpace base) : base_(std::move(base)) {}
    const OperatorSpace& base() const { return base_; }
    double u(int n, const HermitianMatrix& a, const HermitianMatrix& x_scalar,
             const SolverConfig& cfg, const UnitizationOptions& opts = {}) const {
        return u_n(base_, n, a, x_scalar, cfg, opts);
    }
    /// The unit (0, I_n) has gauge exactly one.
    double unit_gauge(int n, const SolverConfig& cfg) const {
        return u(n, HermitianMatrix(n * base_.ambient_dim()), HermitianMatrix::identity(n), cfg);
    }

private:
    OperatorSpace base_;
};

struct UnitizeMapReport {
    int samples = 0;
    int max_level = 0;
    double contractivity_worst = 0.0; // sampled gauge-contractivity slack of phi
    bool contractive = true;          // precondition verdict (still constructible if false)
    double positivity_worst = 0.0;    // worst -lambda_min over sampled unitized positives
};

/// The unital extension phi_1(A, X) = phi^(n)(A) + X tensor e of a map into
/// an operator system (codomain must carry a unit). Returns the positivity
/// report of the extension on sampled positives of the unitized domain.
class UnitizedMap {
public:
    UnitizedMap(LinearMap base, HermitianMatrix codomain_unit);
    /// phi_1 at level n on the pair (A realized, X scalar n x n).
    HermitianMatrix apply(int n, const HermitianMatrix& a, const HermitianMatrix& x_scalar) const;
    const LinearMap& base() const { return base_; }

private:
    LinearMap base_;
    HermitianMatrix unit_;
};

UnitizedMap unitize_map(const LinearMap& phi, int max_level, int samples, std::uint64_t seed,
                        const SolverConfig& cfg, UnitizeMapReport* report = nullptr);

} // namespace gaugekit
