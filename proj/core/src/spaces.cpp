#include "gaugekit/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugekit/gauge.hpp"
#include "gaugekit/rng.hpp"

namespace gaugekit {

namespace {

// Cholesky of the (SPD) Gram matrix of a Hermitian basis; throws if the
// basis is dependent.
std::vector<Vec> gram_cholesky(const std::vector<HermitianMatrix>& basis, const char* what) {
    const std::size_t r = basis.size();
    std::vector<Vec> g(r, Vec(r, 0.0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            double v = trace_inner(basis[i], basis[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    // In-place Cholesky with a dependence check: pivots must stay positive.
    double scale = 1.0;
    for (std::size_t i = 0; i < r; ++i) scale = std::max(scale, g[i][i]);
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t j = 0; j < k; ++j) g[k][k] -= g[k][j] * g[k][j];
        if (g[k][k] <= 1e-10 * scale)
            throw ValidationError(std::string(what) + ": basis not linearly independent "
                                                      "(Gram pivot " +
                                  std::to_string(g[k][k]) + " at " + std::to_string(k) + ")");
        g[k][k] = std::sqrt(g[k][k]);
        for (std::size_t i = k + 1; i < r; ++i) {
            for (std::size_t j = 0; j < k; ++j) g[i][k] -= g[i][j] * g[k][j];
            g[i][k] /= g[k][k];
        }
    }
    return g;
}

Vec chol_solve(const std::vector<Vec>& chol, Vec b) {
    const std::size_t r = b.size();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) b[i] -= chol[i][j] * b[j];
        b[i] /= chol[i][i];
    }
    for (std::size_t i = r; i-- > 0;) {
        for (std::size_t j = i + 1; j < r; ++j) b[i] -= chol[j][i] * b[j];
        b[i] /= chol[i][i];
    }
    return b;
}

Vec projection_coords(const std::vector<HermitianMatrix>& basis, const std::vector<Vec>& chol,
                      const HermitianMatrix& a, double* residual) {
    Vec rhs(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) rhs[i] = trace_inner(basis[i], a);
    Vec c = chol_solve(chol, std::move(rhs));
    if (residual) {
        HermitianMatrix rec(a.dim());
        for (std::size_t i = 0; i < basis.size(); ++i) rec.add_scaled(c[i], basis[i]);
        *residual = (a - rec).frobenius_norm();
    }
    return c;
}

} // namespace

OperatorSpace::OperatorSpace(int ambient_dim, std::vector<HermitianMatrix> basis,
                             std::optional<int> unit)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)), unit_(unit) {
    if (ambient_dim_ <= 0) throw ValidationError("OperatorSpace: ambient_dim must be positive");
    if (basis_.empty()) throw ValidationError("OperatorSpace: basis is empty");
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].dim() != ambient_dim_)
            throw ValidationError("OperatorSpace: basis matrix " + std::to_string(i) +
                                  " has dimension " + std::to_string(basis_[i].dim()) +
                                  ", ambient is " + std::to_string(ambient_dim_));
    gram_chol_ = gram_cholesky(basis_, "OperatorSpace");
    if (unit_) {
        if (*unit_ < 0 || *unit_ >= dim_sa())
            throw ValidationError("OperatorSpace: unit index out of range");
        auto eig = eig_hermitian(basis_[std::size_t(*unit_)]);
        if (eig.lambda_min() <= 0.0)
            throw ValidationError("OperatorSpace: designated unit is not positive definite "
                                  "(lambda_min " +
                                  std::to_string(eig.lambda_min()) + ")");
    }
}

OperatorSpace OperatorSpace::full(int m) {
    auto basis = herm_basis(m);
    // The identity is basis-representable but not a basis element; prepend it
    // as the designated unit by swapping in an equivalent basis.
    std::vector<HermitianMatrix> b;
    b.push_back(HermitianMatrix::identity(m));
    for (int i = 1; i < m; ++i) {
        HermitianMatrix e(m);
        e.at(i, i) = 1.0;
        b.push_back(std::move(e));
    }
    for (std::size_t k = std::size_t(m); k < basis.size(); ++k) b.push_back(basis[k]);
    return OperatorSpace(m, std::move(b), 0);
}

OperatorSpace OperatorSpace::diagonal(int m) {
    std::vector<HermitianMatrix> b;
    b.push_back(HermitianMatrix::identity(m));
    for (int i = 1; i < m; ++i) {
        HermitianMatrix e(m);
        e.at(i, i) = 1.0;
        b.push_back(std::move(e));
    }
    return OperatorSpace(m, std::move(b), 0);
}

const HermitianMatrix& OperatorSpace::unit() const {
    if (!unit_) throw UnitMissing("OperatorSpace: no order unit designated");
    return basis_[std::size_t(*unit_)];
}

Vec OperatorSpace::coords(const HermitianMatrix& a, double* residual) const {
    if (a.dim() != ambient_dim_)
        throw ValidationError("OperatorSpace::coords: dimension mismatch");
    return projection_coords(basis_, gram_chol_, a, residual);
}

HermitianMatrix OperatorSpace::realize(const Vec& c) const {
    if (c.size() != basis_.size())
        throw ValidationError("OperatorSpace::realize: expected " + std::to_string(basis_.size()) +
                              " coordinates");
    HermitianMatrix a(ambient_dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) a.add_scaled(c[i], basis_[i]);
    return a;
}

MatrixLevel::MatrixLevel(const OperatorSpace& parent, int level)
    : parent_(&parent), level_(level), ambient_dim_(level * parent.ambient_dim()) {
    if (level < 1) throw ValidationError("MatrixLevel: level must be >= 1");
    const int m = parent.ambient_dim();
    const int n = level;
    // Basis of M_n(V)_sa: diagonal blocks carry B, off-diagonal pairs carry
    // the symmetric and antisymmetric placements of B.
    for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l)
            for (const auto& b : parent.basis()) {
                if (k == l) {
                    HermitianMatrix e(ambient_dim_);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) e.at(k * m + i, k * m + j) = b.at(i, j);
                    basis_.push_back(std::move(e));
                } else {
                    HermitianMatrix sym(ambient_dim_);
                    HermitianMatrix asym(ambient_dim_);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) {
                            sym.at(k * m + i, l * m + j) = b.at(i, j);
                            sym.at(l * m + i, k * m + j) = b.at(i, j);
                            asym.at(k * m + i, l * m + j) = Complex(0, 1) * b.at(i, j);
                            asym.at(l * m + i, k * m + j) = Complex(0, -1) * b.at(i, j);
                        }
                    basis_.push_back(std::move(sym));
                    basis_.push_back(std::move(asym));
                }
            }
    gram_chol_ = gram_cholesky(basis_, "MatrixLevel");
}

MatrixLevel amplify(const OperatorSpace& v, int n) { return MatrixLevel(v, n); }

Vec MatrixLevel::coords(const HermitianMatrix& a, double* residual) const {
    if (a.dim() != ambient_dim_) throw ValidationError("MatrixLevel::coords: dimension mismatch");
    return projection_coords(basis_, gram_chol_, a, residual);
}

HermitianMatrix MatrixLevel::realize(const Vec& c) const {
    if (c.size() != basis_.size())
        throw ValidationError("MatrixLevel::realize: expected " + std::to_string(basis_.size()) +
                              " coordinates");
    HermitianMatrix a(ambient_dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) a.add_scaled(c[i], basis_[i]);
    return a;
}

HermitianMatrix MatrixLevel::project(const HermitianMatrix& a, double* residual) const {
    return realize(coords(a, residual));
}

HermitianMatrix MatrixLevel::unit() const {
    const HermitianMatrix& e = parent_->unit();
    const int m = parent_->ambient_dim();
    HermitianMatrix u(ambient_dim_);
    for (int k = 0; k < level_; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) u.at(k * m + i, k * m + j) = e.at(i, j);
    return u;
}

HermitianMatrix MatrixLevel::sample(Rng& rng) const {
    HermitianMatrix a(ambient_dim_);
    for (const auto& b : basis_) a.add_scaled(rng.normal(), b);
    return a;
}

std::vector<HermitianMatrix> MatrixLevel::sample_cone_members(int count, Rng& rng) const {
    std::vector<HermitianMatrix> gens;
    const int n = ambient_dim_;
    if (parent_->unit_index()) gens.push_back(unit());
    for (int attempt = 0; attempt < count * 8 && int(gens.size()) < count + 2; ++attempt) {
        // Random low-rank PSD matrix G*G (extremal-ish cone directions),
        // projected onto the span; keep it if the projection stayed PSD
        // (cone = span cap PSD).
        int rank = rng.uniform_int(1, n);
        RectMatrix g(rank, n);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < n; ++j) g.at(i, j) = Complex(rng.normal(), rng.normal());
        RectMatrix gg = g.adjoint() * g;
        HermitianMatrix psd = HermitianMatrix::from_raw(n, gg.entries());
        psd = psd * (1.0 / std::max(1.0, op_norm(psd)));
        HermitianMatrix proj = project(psd);
        auto eig = eig_hermitian(proj);
        if (eig.lambda_min() >= -1e-10 * std::max(1.0, eig.lambda_max()) &&
            eig.lambda_max() > 1e-8)
            gens.push_back(proj);
    }
    std::vector<HermitianMatrix> out;
    if (gens.empty()) return out;
    // Individual members first, then sparse nonnegative recombinations;
    // averaging many terms would wash out the extremal directions.
    for (std::size_t i = 0; i < gens.size() && int(out.size()) < count; ++i)
        out.push_back(gens[i]);
    while (int(out.size()) < count) {
        HermitianMatrix c(ambient_dim_);
        int terms = rng.uniform_int(1, std::min<int>(3, int(gens.size())));
        for (int t = 0; t < terms; ++t)
            c.add_scaled(rng.uniform01(), gens[std::size_t(rng.next_u64() % gens.size())]);
        if (c.frobenius_norm() <= 1e-14) continue;
        out.push_back(std::move(c));
    }
    return out;
}

OrderGaugeValue order_gauge(const MatrixLevel& lvl, const HermitianMatrix& a,
                            const SolverConfig& cfg, bool allow_fast_path) {
    double residual = 0.0;
    Vec c = lvl.coords(a, &residual);
    if (residual > 1e-8 * std::max(1.0, a.frobenius_norm()))
        throw MembershipError("order_gauge: element outside M_n(V)_sa (projection residual " +
                              std::to_string(residual) + ")");
    HermitianMatrix rep = lvl.realize(c);
    OrderGaugeValue out;
    if (lvl.is_full() && allow_fast_path) {
        auto eig = eig_hermitian(rep);
        out.value = std::max(eig.lambda_max(), 0.0);
        out.exact = true;
        return out;
    }
    ConeDistanceProblem prob{rep, lvl.basis(), {}};
    out.report = min_opnorm_over_cone(prob, cfg);
    out.value = out.report.value;
    out.exact = false;
    return out;
}

OrderGaugeValue order_gauge(const OperatorSpace& v, int n, const HermitianMatrix& a,
                            const SolverConfig& cfg, bool allow_fast_path) {
    MatrixLevel lvl(v, n);
    return order_gauge(lvl, a, cfg, allow_fast_path);
}

double level_norm(const MatrixLevel& lvl, const HermitianMatrix& a, const SolverConfig& cfg,
                  bool allow_fast_path) {
    double dpos = order_gauge(lvl, a, cfg, allow_fast_path).value;
    double dneg = order_gauge(lvl, -a, cfg, allow_fast_path).value;
    return std::max(dpos, dneg);
}

RectMatrix scalar_kron(const RectMatrix& x, int entry_dim) {
    RectMatrix k(x.rows() * entry_dim, x.cols() * entry_dim);
    for (int p = 0; p < x.rows(); ++p)
        for (int q = 0; q < x.cols(); ++q) {
            Complex v = x.at(p, q);
            if (v == Complex(0)) continue;
            for (int r = 0; r < entry_dim; ++r) k.at(p * entry_dim + r, q * entry_dim + r) = v;
        }
    return k;
}

double rect_norm(const OperatorSpace& v, const RectBlockMatrix& b, const SolverConfig& cfg) {
    const int m = v.ambient_dim();
    if (b.realized.rows() != b.block_rows * m || b.realized.cols() != b.block_cols * m)
        throw ValidationError("rect_norm: realized shape does not match block dimensions");
    // Entry membership: each block must lie in the complex span of V. The
    // complex coordinates split into two real projections (the basis is
    // Hermitian, so the Gram matrix is shared).
    for (int p = 0; p < b.block_rows; ++p)
        for (int q = 0; q < b.block_cols; ++q) {
            std::vector<Complex> blk(std::size_t(m) * m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) blk[std::size_t(i) * m + j] = b.realized.at(p * m + i, q * m + j);
            // b = h1 + i h2 with h1, h2 Hermitian
            std::vector<Complex> h1(std::size_t(m) * m), h2(std::size_t(m) * m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Complex bij = blk[std::size_t(i) * m + j];
                    Complex bji = std::conj(blk[std::size_t(j) * m + i]);
                    h1[std::size_t(i) * m + j] = 0.5 * (bij + bji);
                    h2[std::size_t(i) * m + j] = Complex(0, -0.5) * (bij - bji);
                }
            double r1 = 0, r2 = 0;
            v.coords(HermitianMatrix::from_raw(m, h1), &r1);
            v.coords(HermitianMatrix::from_raw(m, h2), &r2);
            if (r1 > 1e-8 || r2 > 1e-8)
                throw MembershipError("rect_norm: block (" + std::to_string(p) + "," +
                                      std::to_string(q) + ") outside the span of V");
        }
    // Self-adjoint embedding [[0, B], [B*, 0]] at level block_rows+block_cols.
    const int rows = b.realized.rows(), cols = b.realized.cols();
    const int dim = rows + cols;
    HermitianMatrix t(dim);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            t.at(i, rows + j) = b.realized.at(i, j);
            t.at(rows + j, i) = std::conj(b.realized.at(i, j));
        }
    MatrixLevel lvl(v, b.block_rows + b.block_cols);
    return level_norm(lvl, t, cfg);
}

MosAxiomReport check_mos_axioms(const OperatorSpace& v, int max_level, int trials,
                                std::uint64_t seed, const SolverConfig& cfg, bool certify) {
    if (max_level < 2) throw ValidationError("check_mos_axioms: max_level must be >= 2");
    Rng rng(seed);
    MosAxiomReport rep;
    rep.trials = trials;
    const int m = v.ambient_dim();

    std::vector<MatrixLevel> levels;
    for (int n = 1; n <= max_level; ++n) levels.emplace_back(v, n);

    for (int it = 0; it < trials; ++it) {
        int n = 1 + int(rng.next_u64() % std::uint64_t(max_level - 1));
        int k = 1 + int(rng.next_u64() % std::uint64_t(max_level - n));
        const MatrixLevel& ln = levels[std::size_t(n - 1)];
        const MatrixLevel& lk = levels[std::size_t(k - 1)];
        const MatrixLevel& lnk = levels[std::size_t(n + k - 1)];

        HermitianMatrix a = ln.sample(rng);

        // Compression slack at level k against |X|^2 d_n(A).
        RectMatrix x(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) x.at(i, j) = Complex(rng.normal(), rng.normal());
        RectMatrix kx = scalar_kron(x, m);
        HermitianMatrix xax = congruence(kx.adjoint(), a);
        double da = order_gauge(ln, a, cfg).value;
        double dxa = order_gauge(lk, xax, cfg).value;
        double xn = op_norm(x);
        rep.compression_worst = std::max(rep.compression_worst, dxa - xn * xn * da);

        // Direct-sum rule at level n + k.
        HermitianMatrix b = lk.sample(rng);
        double db = order_gauge(lk, b, cfg).value;
        double dab = order_gauge(lnk, direct_sum(a, b), cfg).value;
        rep.directsum_worst = std::max(rep.directsum_worst, std::abs(dab - std::max(da, db)));

        if (certify && !lnk.is_full()) {
            ConeDistanceProblem prob{lnk.project(direct_sum(a, b)), lnk.basis(), {}};
            if (!certify_value(prob, dab, 4, Rng::derive(seed, std::uint64_t(it)), cfg))
                rep.certified = false;
        }
    }
    rep.compression_worst = std::max(rep.compression_worst, 0.0);
    return rep;
}

NormalityLevelReport check_normal_level(const OperatorSpace& v, int n, int trials,
                                        std::uint64_t seed, const SolverConfig& cfg) {
    Rng rng(seed);
    NormalityLevelReport rep;
    rep.trials = trials;
    MatrixLevel lvl(v, n);
    auto cone = lvl.sample_cone_members(2 * trials, rng);
    for (int it = 0; it < trials; ++it) {
        HermitianMatrix y = lvl.sample(rng);
        HermitianMatrix x = y, z = y;
        if (!cone.empty()) {
            const auto& pm = cone[std::size_t(rng.next_u64() % cone.size())];
            const auto& qm = cone[std::size_t(rng.next_u64() % cone.size())];
            x.add_scaled(-rng.uniform01(), pm);
            z.add_scaled(rng.uniform01(), qm);
        }
        double ny = level_norm(lvl, y, cfg);
        double nx = level_norm(lvl, x, cfg);
        double nz = level_norm(lvl, z, cfg);
        rep.worst_violation = std::max(rep.worst_violation, ny - std::max(nx, nz));
    }
    rep.worst_violation = std::max(rep.worst_violation, 0.0);
    return rep;
}

} // namespace gaugekit
