#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gaugekit/herm.hpp"
#include "gaugekit/solver.hpp"

namespace gaugekit {

class Rng;

/// Concrete self-adjoint operator space V inside Herm(m): the real span of a
/// list of Hermitian basis matrices, optionally with one of them designated
/// as an order unit (which must be positive definite).
class OperatorSpace {
public:
    OperatorSpace(int ambient_dim, std::vector<HermitianMatrix> basis,
                  std::optional<int> unit = std::nullopt);

    static OperatorSpace full(int m);
    static OperatorSpace diagonal(int m);

    int ambient_dim() const { return ambient_dim_; }
    int dim_sa() const { return int(basis_.size()); }
    const std::vector<HermitianMatrix>& basis() const { return basis_; }
    std::optional<int> unit_index() const { return unit_; }
    const HermitianMatrix& unit() const; // throws UnitMissing
    bool is_full() const { return dim_sa() == ambient_dim_ * ambient_dim_; }

    /// Orthogonal-projection coordinates under the trace pairing; the
    /// residual (if requested) is the Frobenius distance to the span.
    Vec coords(const HermitianMatrix& a, double* residual = nullptr) const;
    HermitianMatrix realize(const Vec& coords) const;

private:
    int ambient_dim_;
    std::vector<HermitianMatrix> basis_;
    std::optional<int> unit_;
    std::vector<Vec> gram_chol_; // Cholesky factor of the basis Gram matrix
};

/// M_n(V)_sa: the level-n amplification, realized inside Herm(n*m).
class MatrixLevel {
public:
    MatrixLevel(const OperatorSpace& parent, int level);

    const OperatorSpace& parent() const { return *parent_; }
    int level() const { return level_; }
    int ambient_dim() const { return ambient_dim_; }
    const std::vector<HermitianMatrix>& basis() const { return basis_; }
    bool is_full() const { return parent_->is_full(); }

    Vec coords(const HermitianMatrix& a, double* residual = nullptr) const;
    HermitianMatrix realize(const Vec& coords) const;
    /// Nearest span element; residual reported if requested.
    HermitianMatrix project(const HermitianMatrix& a, double* residual = nullptr) const;
    /// The order unit at this level, I_n tensor e; throws UnitMissing.
    HermitianMatrix unit() const;

    /// Random element of the span with standard normal coordinates.
    HermitianMatrix sample(Rng& rng) const;
    /// Cone members of span cap PSD: projections of random PSD matrices that
    /// stay PSD, plus nonnegative recombinations; may return fewer than
    /// requested when the cone is thin.
    std::vector<HermitianMatrix> sample_cone_members(int count, Rng& rng) const;

private:
    const OperatorSpace* parent_;
    int level_;
    int ambient_dim_;
    std::vector<HermitianMatrix> basis_;
    std::vector<Vec> gram_chol_;
};

MatrixLevel amplify(const OperatorSpace& v, int n);

struct OrderGaugeValue {
    double value = 0.0;
    bool exact = false;  // closed-form full-space path
    SolveReport report;  // populated on the solver path
};

/// d_{n,V}(A) = dist(A, M_n(V)_-). A must lie in M_n(V)_sa within the
/// membership tolerance 1e-8 (relative), otherwise MembershipError. When V
/// spans all of Herm(m) the value is the exact closed form
/// max(lambda_max(A), 0); allow_fast_path = false forces the solver route.
OrderGaugeValue order_gauge(const OperatorSpace& v, int n, const HermitianMatrix& a,
                            const SolverConfig& cfg, bool allow_fast_path = true);
OrderGaugeValue order_gauge(const MatrixLevel& lvl, const HermitianMatrix& a,
                            const SolverConfig& cfg, bool allow_fast_path = true);

/// Induced norm at level n: max(d(A), d(-A)).
double level_norm(const MatrixLevel& lvl, const HermitianMatrix& a, const SolverConfig& cfg,
                  bool allow_fast_path = true);

/// Rectangular element B of M_{n,m}(V), stored realized as an
/// (n*ambient) x (m*ambient) complex matrix.
struct RectBlockMatrix {
    int block_rows = 0, block_cols = 0;
    RectMatrix realized;
};

/// Norm of B in M_{n,m}(V) via the self-adjoint embedding [[0,B],[B*,0]] at
/// level n+m. Entries must lie in the complex span of V.
double rect_norm(const OperatorSpace& v, const RectBlockMatrix& b, const SolverConfig& cfg);

struct MosAxiomReport {
    int trials = 0;
    double compression_worst = 0.0; // max(0, d_k(X*AX) - |X|^2 d_n(A))
    double directsum_worst = 0.0;   // max |d_{n+k}(A (+) B) - max(d_n A, d_k B)|
    bool certified = true;          // restart certification of the solved values
};

/// Samples the two defining inequalities of the level gauges across levels
/// n + k <= max_level.
MosAxiomReport check_mos_axioms(const OperatorSpace& v, int max_level, int trials,
                                std::uint64_t seed, const SolverConfig& cfg,
                                bool certify = false);

struct NormalityLevelReport {
    int trials = 0;
    double worst_violation = 0.0; // max(0, |y| - max(|x|,|z|)) over chains
};

/// Chain normality at level n with cone perturbations drawn from the
/// sampled cone members.
NormalityLevelReport check_normal_level(const OperatorSpace& v, int n, int trials,
                                        std::uint64_t seed, const SolverConfig& cfg);

/// Scalar matrix X tensored with the identity of the entry space: the
/// realization of the compression X* A X on block indices.
RectMatrix scalar_kron(const RectMatrix& x, int entry_dim);

} // namespace gaugekit
