#include "gaugekit/unitization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugekit/rng.hpp"

namespace gaugekit {

double nu1(const Gauge& g, const Vec& x, double lambda) {
    return std::max(g(x) + lambda, 0.0);
}

double aou_gauge(const OperatorSpace& v, int n, const HermitianMatrix& a) {
    if (!v.unit_index()) throw UnitMissing("aou_gauge: space has no designated order unit");
    MatrixLevel lvl(v, n);
    double residual = 0.0;
    lvl.coords(a, &residual);
    if (residual > 1e-8 * std::max(1.0, a.frobenius_norm()))
        throw MembershipError("aou_gauge: element outside M_n(V)_sa");
    HermitianMatrix e = lvl.unit();
    HermitianMatrix es = inv_sqrt_pd(e, 1e-12);
    HermitianMatrix c = congruence(RectMatrix::from_hermitian(es), a);
    auto eig = eig_hermitian(c);
    return std::max(eig.lambda_max(), 0.0);
}

double u_n(const OperatorSpace& v, int n, const HermitianMatrix& a, const HermitianMatrix& x_scalar,
           const SolverConfig& cfg, const UnitizationOptions& opts) {
    if (x_scalar.dim() != n) throw ValidationError("u_n: scalar part must be n x n");
    if (a.dim() != n * v.ambient_dim())
        throw ValidationError("u_n: element must live in M_n(V) realized");
    MatrixLevel lvl(v, n);
    double residual = 0.0;
    lvl.coords(a, &residual);
    if (residual > 1e-8 * std::max(1.0, a.frobenius_norm()))
        throw MembershipError("u_n: element outside M_n(V)_sa");

    auto xeig = eig_hermitian(x_scalar);
    const double lx = xeig.lambda_max();
    const double xscale = std::max(1.0, op_norm(x_scalar));
    const double pd_cutoff = 1e-9 * xscale;

    // Scalar restriction: the infimum is the order-unit gauge of X itself.
    if (opts.allow_fast_path && a.frobenius_norm() <= 1e-14 * std::max(1.0, x_scalar.frobenius_norm()))
        return std::max(lx, 0.0);

    auto d_gauge = [&](const HermitianMatrix& m) {
        OrderGaugeValue g = order_gauge(lvl, m, cfg, opts.allow_fast_path);
        if (!g.exact && !g.report.converged)
            throw ConvergenceError("u_n: cone-distance solve did not converge inside a "
                                   "feasibility probe");
        return g.value;
    };

    auto feasible = [&](double t) {
        HermitianMatrix xt = HermitianMatrix::identity(n) * t - x_scalar;
        auto eig = eig_hermitian(xt);
        if (eig.lambda_min() < pd_cutoff) return false;
        HermitianMatrix h = inv_sqrt_pd(xt, 0.5 * pd_cutoff);
        HermitianMatrix compressed =
            congruence(scalar_kron(RectMatrix::from_hermitian(h), v.ambient_dim()), a);
        try {
            return d_gauge(compressed) <= 1.0;
        } catch (const ConvergenceError&) {
            throw ConvergenceError("u_n: solver non-convergence at probe t = " + std::to_string(t));
        }
    };

    double t_lo = std::max(lx, 0.0);
    // d(A) bounds the offset of the first feasible t above lambda_max(X).
    double da = d_gauge(lvl.project(a));
    double t_hi = t_lo + std::max(da * (1.0 + 1e-3) + 1e-6, 1e-6);
    int doublings = 0;
    while (!feasible(t_hi)) {
        t_hi = t_lo + 2.0 * (t_hi - t_lo);
        if (++doublings > 60)
            throw ConvergenceError("u_n: could not bracket a feasible t (gauge evaluation "
                                   "inconsistent)");
    }

    if (opts.check_monotone) {
        // Feasibility must be monotone in t; probe a coarse grid.
        bool seen_feasible = false;
        for (int i = 0; i < 16; ++i) {
            double t = t_lo + (t_hi - t_lo) * (double(i) + 0.5) / 16.0;
            bool f = feasible(t);
            if (seen_feasible && !f)
                throw Error("u_n: feasibility not monotone at t = " + std::to_string(t));
            seen_feasible = seen_feasible || f;
        }
    }

    int probes = 0;
    while (t_hi - t_lo > opts.t_tol && probes < opts.max_probes) {
        double mid = 0.5 * (t_lo + t_hi);
        if (feasible(mid)) t_hi = mid;
        else t_lo = mid;
        ++probes;
    }
    return 0.5 * (t_lo + t_hi);
}

UnitizedMap::UnitizedMap(LinearMap base, HermitianMatrix codomain_unit)
    : base_(std::move(base)), unit_(std::move(codomain_unit)) {}

HermitianMatrix UnitizedMap::apply(int n, const HermitianMatrix& a,
                                   const HermitianMatrix& x_scalar) const {
    HermitianMatrix img = apply_level(base_, n, a);
    const int mw = unit_.dim();
    // add X tensor e
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Complex x = x_scalar.at(p, q);
            if (x == Complex(0)) continue;
            for (int i = 0; i < mw; ++i)
                for (int j = 0; j < mw; ++j) img.at(p * mw + i, q * mw + j) += x * unit_.at(i, j);
        }
    return HermitianMatrix::from_raw(img.dim(), img.entries());
}

UnitizedMap unitize_map(const LinearMap& phi, int max_level, int samples, std::uint64_t seed,
                        const SolverConfig& cfg, UnitizeMapReport* report) {
    if (phi.domain.is_poly() || phi.codomain.is_poly())
        throw ValidationError("unitize_map: both spaces must be matrix-backed");
    if (!phi.codomain.op().unit_index())
        throw UnitMissing("unitize_map: codomain must be an operator system (designated unit)");

    UnitizeMapReport rep;
    rep.samples = samples;
    rep.max_level = max_level;
    Rng rng(seed);

    // Sampled gauge-contractivity of phi (the precondition of the lemma).
    for (int n = 1; n <= max_level; ++n) {
        const MatrixLevel& dl = phi.domain.level(n);
        const MatrixLevel& cl = phi.codomain.level(n);
        for (int it = 0; it < samples; ++it) {
            HermitianMatrix a = dl.sample(rng);
            double nrm = op_norm(a);
            if (nrm <= 1e-12) continue;
            a = a * (1.0 / nrm);
            double nu = order_gauge(dl, a, cfg).value;
            double om = order_gauge(cl, apply_level(phi, n, a), cfg).value;
            rep.contractivity_worst = std::max(rep.contractivity_worst, om - nu);
        }
    }
    rep.contractive = rep.contractivity_worst <= 5.0 * cfg.tol;

    UnitizedMap ext(phi, phi.codomain.op().unit());

    // Positivity of the extension on sampled positives (B, yI) with
    // y >= d(-B), enriched by scalar congruences.
    for (int n = 1; n <= max_level; ++n) {
        const MatrixLevel& dl = phi.domain.level(n);
        for (int it = 0; it < samples; ++it) {
            HermitianMatrix b = dl.sample(rng);
            double nrm = op_norm(b);
            if (nrm > 1e-12) b = b * (1.0 / nrm);
            double y = order_gauge(dl, -b, cfg).value * 1.1 + 0.01;
            HermitianMatrix x = HermitianMatrix::identity(n) * y;
            if (it % 2 == 1) {
                // congruence by a random scalar contraction keeps positivity
                RectMatrix z(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
                double zn = op_norm(z);
                if (zn > 1e-12) {
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) z.at(i, j) /= zn;
                    RectMatrix zadj = z.adjoint();
                    b = congruence(scalar_kron(zadj, phi.domain.op().ambient_dim()), b);
                    x = congruence(zadj, x);
                }
            }
            HermitianMatrix img = ext.apply(n, b, x);
            double viol = std::max(0.0, -eig_hermitian(img).lambda_min());
            rep.positivity_worst = std::max(rep.positivity_worst, viol);
        }
    }
    if (report) *report = rep;
    return ext;
}

} // namespace gaugekit
