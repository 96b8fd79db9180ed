#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "gaugekit/poly.hpp"
#include "gaugekit/spaces.hpp"

namespace gaugekit {

/// Polyhedral backend space: R^d with a polytope/sup norm and a polyhedral
/// cone; its gauge is the exact LP distance d.
struct PolySpace {
    PolyNorm norm;
    PolyCone cone;
};

/// A gauged space handle: either a polyhedral space (level 1 only) or a
/// concrete matrix space with solver/closed-form level gauges. Matrix
/// levels are cached per handle.
class Space {
public:
    explicit Space(PolySpace p);
    explicit Space(OperatorSpace v);

    bool is_poly() const { return std::holds_alternative<PolySpace>(data_); }
    const PolySpace& poly() const { return std::get<PolySpace>(data_); }
    const OperatorSpace& op() const { return std::get<OperatorSpace>(data_); }

    /// Real coordinate dimension of the self-adjoint part at level 1.
    int dim_sa() const;
    /// Coordinate dimension at level n (n = 1 for polyhedral spaces).
    int dim_sa(int level) const;
    int max_level() const { return is_poly() ? 1 : 1 << 20; }

    const MatrixLevel& level(int n) const; // matrix backend only

    /// Level-n gauge of an element given by coordinates (level-1 basis
    /// coordinates for poly; amplified-basis coordinates for matrix).
    double gauge(int level, const Vec& coords, const SolverConfig& cfg) const;
    double conjugate_gauge(int level, const Vec& coords, const SolverConfig& cfg) const;
    double induced_norm(int level, const Vec& coords, const SolverConfig& cfg) const;

private:
    std::variant<PolySpace, OperatorSpace> data_;
    mutable std::shared_ptr<std::vector<std::shared_ptr<const MatrixLevel>>> levels_;
};

/// Self-adjoint linear map between spaces, stored as a real matrix acting on
/// level-1 self-adjoint coordinates (rows: codomain, cols: domain).
struct LinearMap {
    Space domain;
    Space codomain;
    std::vector<Vec> matrix;
    bool selfadjoint_flag = true;

    LinearMap(Space dom, Space cod, std::vector<Vec> m);
    Vec apply(const Vec& x) const;
};

LinearMap identity_map(const Space& s);
LinearMap zero_map(const Space& dom, const Space& cod);
LinearMap compose(const LinearMap& f, const LinearMap& g); // f after g
/// A -> Z* A Z from Herm(m_dom) to Herm(m_cod), Z of shape m_dom x m_cod.
LinearMap congruence_map(const OperatorSpace& dom, const OperatorSpace& cod, const RectMatrix& z);
/// Entrywise transpose on the full space Herm(m).
LinearMap transpose_map(int m);

/// Realized application of the level-n amplification phi^(n).
HermitianMatrix apply_level(const LinearMap& phi, int n, const HermitianMatrix& a);

/// The amplification phi^(n) materialized as a LinearMap between the
/// amplified spaces.
LinearMap amplified_map(const LinearMap& phi, int n);

struct GaugeNormEstimate {
    double lower_bound = 0.0;
    bool unbounded = false;
    bool exact = false;            // exact only for the polyhedral backend
    std::vector<int> levels_checked;
    int witness_level = 1;
    Vec witness;                   // domain coordinates at witness_level
};

/// Certified lower bound on |phi|_g: the max over sampled gauge-normalized
/// elements of the codomain gauge of the image, refined by local coordinate
/// ascent; exact sup when both spaces are polyhedral.
GaugeNormEstimate gauge_norm(const LinearMap& phi, int max_level, int trials, std::uint64_t seed,
                             const SolverConfig& cfg);

struct CpccReport {
    int levels_checked = 0;
    int trials = 0;
    double positivity_worst = 0.0;  // against the codomain cone, unit-norm samples
    double contraction_worst = 0.0; // max(0, |phi(Y)| - 1) on induced-norm-1 samples
    int positivity_witness_level = 0;
    std::optional<HermitianMatrix> positivity_witness; // re-verified cone member mapped outside
};

/// Samples complete positivity and complete contractivity up to max_level.
CpccReport check_cpcc(const LinearMap& phi, int max_level, int trials, std::uint64_t seed,
                      const SolverConfig& cfg);

struct ExtensionConditionReport {
    int max_level = 0;
    int probes = 0;
    double max_gap = 0.0; // max over samples of d_{n,S}(A) - d_{n,V}(A)
    double min_gap = 0.0;
    bool extension_friendly = false; // max_gap <= 5 tol
};

/// The restriction-gauge criterion: for sampled A in M_n(S)_sa compares the
/// gauge of S with the restriction of the gauge of V. Cone inclusion makes
/// the gap nonnegative up to solver error.
ExtensionConditionReport extension_condition(const OperatorSpace& v,
                                             const std::vector<HermitianMatrix>& s_basis,
                                             int probes, int max_level, std::uint64_t seed,
                                             const SolverConfig& cfg);

struct MatrixHbResult {
    bool precondition_ok = true;
    double precondition_worst = 0.0; // worst sampled f(s) - d_V(s)
    bool extended = false;           // witness found by the finite LP relaxation
    Vec functional;                  // values on V's basis coordinates
    double residual_worst = 0.0;     // worst g(x) - d_V(x) over fresh samples
    ExtensionConditionReport gauge_criterion; // reported alongside on failure
};

/// Finite LP relaxation of the functional extension problem on the matrix
/// backend: find g with g|_S = f and g <= d_V on a sampled constraint set.
MatrixHbResult hb_extend_matrix(const OperatorSpace& v,
                                const std::vector<HermitianMatrix>& s_basis,
                                const Vec& f_on_s, int samples, std::uint64_t seed,
                                const SolverConfig& cfg);

} // namespace gaugekit
