#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gaugekit/lp.hpp"

namespace gaugekit {

/// Polyhedral cone in R^d given by a conic hull of generators; halfspace
/// normals (offset 0, inner form <h,x> >= 0) may be carried alongside and
/// are cross-checked against the generators at construction. An empty
/// generator list is the cone {0}.
struct PolyCone {
    int dim = 0;
    std::vector<Vec> generators;
    std::vector<Vec> halfspaces;

    PolyCone() = default;
    PolyCone(int d, std::vector<Vec> gens, std::vector<Vec> planes = {});

    /// No nonzero x with x and -x both in the cone; decided by LP.
    bool is_proper() const;
    /// Conic-combination feasibility, decided by LP.
    bool contains(const Vec& x, double tol = 1e-9) const;
};

/// Norm on R^d: either the sup norm or a polytope norm described by the
/// vertices of its unit ball (symmetric with nonempty interior, d <= 6).
struct PolyNorm {
    enum class Kind { sup, polytope };
    int dim = 0;
    Kind kind = Kind::sup;
    std::vector<Vec> vertices; // polytope kind only

    static PolyNorm sup(int d);
    static PolyNorm polytope(int d, std::vector<Vec> verts);

    /// Sup norm in closed form; polytope norm as the LP
    /// min { sum lambda : V lambda = x, lambda >= 0 }.
    double value(const Vec& x) const;
};

/// d_V(x) = dist(x, -cone) = min { ||x + p|| : p in cone }, solved exactly
/// as an LP in generator coordinates with the norm epigraph linearized over
/// the unit-ball vertex description.
double d_gauge_exact(const PolyNorm& norm, const PolyCone& cone, const Vec& x);

/// Quotient variant: min over free coset coordinates as well,
/// min { ||x + sum_l m_l s_l + p|| : m free, p in cone }.
double d_gauge_quotient_exact(const PolyNorm& norm, const PolyCone& cone,
                              const std::vector<Vec>& coset_basis, const Vec& x);

struct NormalityReport {
    int trials = 0;
    double worst_violation = 0.0; // max(0, ||y|| - max(||x||,||z||))
    std::vector<std::array<Vec, 3>> witnesses; // re-verified (x,y,z) triples
};

/// Samples chains x <= y <= z (built as y - p, y, y + q with p,q in the
/// cone) and reports the worst normality violation. A violating triple is
/// re-verified by direct norm evaluation before it is recorded.
NormalityReport check_normal_exact(const PolyNorm& norm, const PolyCone& cone, int trials,
                                   std::uint64_t seed);

/// Endpoints of { f(x) : f gauge-contractive } = [-d(-x), d(x)], both
/// computed by LP over the contractive functional polytope
/// { f : f(v_j) <= 1 on ball vertices, f(g_i) >= 0 on generators }.
/// Throws if the LP endpoints disagree with the d values beyond 1e-8.
std::pair<double, double> functional_range(const PolyNorm& norm, const PolyCone& cone, const Vec& x);

struct HbExtendResult {
    bool precondition_ok = true;   // f gauge-contractive on the subspace
    std::optional<Vec> violation_witness; // subspace element with f(s) > d(s)
    bool extended = false;
    Vec functional;                // g with g|_S = f, g <= d everywhere
};

/// Gauge-contractive extension of a functional from a subspace, by LP
/// feasibility over the contractive polytope.
HbExtendResult hb_extend(const PolyNorm& norm, const PolyCone& cone,
                         const std::vector<Vec>& subspace_basis, const Vec& f_on_subspace);

} // namespace gaugekit
