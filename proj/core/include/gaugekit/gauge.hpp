#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gaugekit/errors.hpp"
#include "gaugekit/herm.hpp"

namespace gaugekit {

enum class GaugeKind { closed_form, lp_backed, solver_backed };

/// A gauge is represented behaviorally: a total evaluator from coordinate
/// vectors of the underlying real space to nonnegative reals. Closed-form,
/// LP-backed and solver-backed gauges are interchangeable everywhere; the
/// axioms are checked by sampling, never assumed.
class Gauge {
public:
    using Evaluator = std::function<double(const Vec&)>;

    Gauge() : dim_(0), kind_(GaugeKind::closed_form) {}
    Gauge(int space_dim, GaugeKind kind, Evaluator eval)
        : dim_(space_dim), kind_(kind), eval_(std::move(eval)) {
        if (space_dim <= 0) throw ValidationError("Gauge: space_dim must be positive");
    }

    int space_dim() const { return dim_; }
    GaugeKind kind() const { return kind_; }

    double operator()(const Vec& x) const {
        if (int(x.size()) != dim_) throw ValidationError("Gauge: coordinate vector has wrong dimension");
        return eval_(x);
    }

private:
    int dim_;
    GaugeKind kind_;
    Evaluator eval_;
};

/// u(t) = max(0, t), the canonical gauge on the real line.
double scalar_u(double t);

/// The conjugate gauge x -> g(-x).
Gauge conjugate(const Gauge& g);

/// ||x||_g = max(g(x), g(-x)).
double induced_norm(const Gauge& g, const Vec& x);

/// Membership in the induced cone ker(conjugate): g(-x) <= tol.
bool cone_member(const Gauge& g, const Vec& x, double tol);

struct GaugeAxiomReport {
    int trials = 0;
    double subadditivity_worst = 0.0; // max(0, g(x+y) - g(x) - g(y))
    double homogeneity_worst = 0.0;   // max |g(tx) - t g(x)|
    bool properness_witnessed = true; // no sampled x != 0 had g(x) = g(-x) = 0
    std::vector<Vec> failures;        // witnesses for properness failures
};

/// Samples (x, y) with i.i.d. standard normal coordinates and t log-uniform
/// on [1e-3, 1e3], and reports the worst observed slacks. Properness is only
/// ever witnessed, never proven.
GaugeAxiomReport check_gauge_axioms(const Gauge& g, std::uint64_t sampler_seed, int trials);

/// The scalar gauge (R, u) packaged as a Gauge.
Gauge u_gauge();

/// A -> max(lambda_max(A), 0) on Herm(m), in coordinates of the canonical
/// self-adjoint basis (see herm_basis/coords_to_herm).
Gauge positive_part_gauge(int m);

/// Canonical real basis of Herm(m): E_ii, then for i<j the pair
/// (E_ij + E_ji)/sqrt(2) and i(E_ij - E_ji)/sqrt(2). Orthonormal for the
/// trace pairing.
std::vector<HermitianMatrix> herm_basis(int m);
HermitianMatrix coords_to_herm(int m, const Vec& coords);
Vec herm_to_coords(const HermitianMatrix& a);

} // namespace gaugekit
