#include "gaugekit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "gaugekit/errors.hpp"
#include "gaugekit/rng.hpp"

namespace gaugekit {

namespace {

// ---- fast eigen helpers for the inner loop ------------------------------
//
// The solver only ever needs the two extreme eigenvalues and at most two
// eigenvectors per iteration. For n <= 2 closed forms apply; otherwise we
// run the Jacobi sweep without accumulating rotations and recover a single
// eigenvector by inverse iteration.

void jacobi_eigenvalues(const HermitianMatrix& a, Vec& evals) {
    const int n = a.dim();
    const int N = 2 * n;
    std::vector<double> b(std::size_t(N) * N, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = a.at(i, j).real(), im = a.at(i, j).imag();
            b[std::size_t(i) * N + j] = re;
            b[std::size_t(i + n) * N + (j + n)] = re;
            b[std::size_t(i) * N + (j + n)] = -im;
            b[std::size_t(i + n) * N + j] = im;
        }
    auto at = [N, &b](int i, int j) -> double& { return b[std::size_t(i) * N + j]; };
    double fro = a.frobenius_norm();
    const double sweep_tol = 1e-13 * fro * std::sqrt(2.0);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off += 2.0 * at(p, q) * at(p, q);
        if (std::sqrt(off) <= sweep_tol) break;
        for (int p = 0; p < N - 1; ++p)
            for (int q = p + 1; q < N; ++q) {
                double bpq = at(p, q);
                if (bpq == 0.0) continue;
                double app = at(p, p), aqq = at(q, q);
                if (std::abs(bpq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                double theta = (aqq - app) / (2.0 * bpq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                at(p, p) = app - t * bpq;
                at(q, q) = aqq + t * bpq;
                at(p, q) = at(q, p) = 0.0;
                for (int r = 0; r < N; ++r) {
                    if (r == p || r == q) continue;
                    double brp = at(r, p), brq = at(r, q);
                    at(r, p) = at(p, r) = c * brp - s * brq;
                    at(r, q) = at(q, r) = s * brp + c * brq;
                }
            }
    }
    // Eigenvalues of A are those of the embedding, each doubled: take every
    // second one after sorting.
    Vec all(static_cast<std::size_t>(N), 0.0);
    for (int i = 0; i < N; ++i) all[std::size_t(i)] = at(i, i);
    std::sort(all.begin(), all.end());
    evals.resize(std::size_t(n));
    for (int i = 0; i < n; ++i)
        evals[std::size_t(i)] = 0.5 * (all[std::size_t(2 * i)] + all[std::size_t(2 * i + 1)]);
}

void all_eigenvalues(const HermitianMatrix& a, Vec& ev) {
    const int n = a.dim();
    if (n == 1) {
        ev = {a.at(0, 0).real()};
        return;
    }
    if (n == 2) {
        double tr = a.at(0, 0).real() + a.at(1, 1).real();
        double df = a.at(0, 0).real() - a.at(1, 1).real();
        double disc = std::sqrt(df * df + 4.0 * std::norm(a.at(0, 1)));
        ev = {0.5 * (tr - disc), 0.5 * (tr + disc)};
        return;
    }
    jacobi_eigenvalues(a, ev);
}

void extreme_eigenvalues(const HermitianMatrix& a, double& lmin, double& lmax) {
    Vec ev;
    all_eigenvalues(a, ev);
    lmin = ev.front();
    lmax = ev.back();
}

// Inverse iteration for the eigenvector of an isolated (or clustered; any
// in-cluster vector is fine for a subgradient) eigenvalue lambda.
std::vector<Complex> eigvec_inverse_iteration(const HermitianMatrix& a, double lambda) {
    const int n = a.dim();
    const std::size_t nn = std::size_t(n);
    double scale = std::max(1.0, std::abs(lambda));
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(a.at(i, i).real()));
    const double shift = lambda + 1e-12 * scale;
    // PLU of (A - shift I) with a tiny-pivot guard.
    std::vector<Complex> lu(nn * nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lu[std::size_t(i) * nn + std::size_t(j)] = a.at(i, j) - (i == j ? Complex(shift) : Complex(0));
    std::vector<int> piv(nn);
    for (int k = 0; k < n; ++k) {
        int pr = k;
        double pm = std::abs(lu[std::size_t(k) * nn + std::size_t(k)]);
        for (int r = k + 1; r < n; ++r) {
            double v = std::abs(lu[std::size_t(r) * nn + std::size_t(k)]);
            if (v > pm) {
                pm = v;
                pr = r;
            }
        }
        piv[std::size_t(k)] = pr;
        if (pr != k)
            for (int j = 0; j < n; ++j)
                std::swap(lu[std::size_t(k) * nn + std::size_t(j)], lu[std::size_t(pr) * nn + std::size_t(j)]);
        Complex& pivot = lu[std::size_t(k) * nn + std::size_t(k)];
        if (std::abs(pivot) < 1e-300) pivot = Complex(1e-300);
        for (int r = k + 1; r < n; ++r) {
            Complex f = lu[std::size_t(r) * nn + std::size_t(k)] / pivot;
            lu[std::size_t(r) * nn + std::size_t(k)] = f;
            if (f == Complex(0)) continue;
            for (int j = k + 1; j < n; ++j)
                lu[std::size_t(r) * nn + std::size_t(j)] -= f * lu[std::size_t(k) * nn + std::size_t(j)];
        }
    }
    auto solve = [&](std::vector<Complex>& x) {
        for (int k = 0; k < n; ++k)
            if (piv[std::size_t(k)] != k) std::swap(x[std::size_t(k)], x[std::size_t(piv[std::size_t(k)])]);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < k; ++j) x[std::size_t(k)] -= lu[std::size_t(k) * nn + std::size_t(j)] * x[std::size_t(j)];
        for (int k = n - 1; k >= 0; --k) {
            for (int j = k + 1; j < n; ++j) x[std::size_t(k)] -= lu[std::size_t(k) * nn + std::size_t(j)] * x[std::size_t(j)];
            x[std::size_t(k)] /= lu[std::size_t(k) * nn + std::size_t(k)];
        }
    };
    std::vector<Complex> x(nn);
    for (int i = 0; i < n; ++i) x[std::size_t(i)] = Complex(1.0 / double(i + 1), 0.1);
    for (int pass = 0; pass < 2; ++pass) {
        solve(x);
        double nrm = 0;
        for (const auto& z : x) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-280) { // pathological right-hand side; reseed
            for (int i = 0; i < n; ++i) x[std::size_t(i)] = Complex(0.3, 1.0 / double(i + 2));
            continue;
        }
        for (auto& z : x) z /= nrm;
    }
    return x;
}

// Vectors spanning an eigenvalue cluster evs[lo..hi]: inverse iteration for
// separated eigenvalues, the full decomposition for degenerate clusters,
// plus pairwise mixtures so the dyad hull is sampled beyond the eigenbasis.
std::vector<std::vector<Complex>> cluster_vectors(const HermitianMatrix& a, const Vec& evs,
                                                  int lo, int hi, double scale);

std::vector<Complex> eigvec_for(const HermitianMatrix& a, double lambda) {
    const int n = a.dim();
    if (n == 1) return {Complex(1)};
    if (n == 2) {
        Complex b = a.at(0, 1);
        double d0 = a.at(0, 0).real(), d1 = a.at(1, 1).real();
        // (A - lambda) v = 0: pick the better-conditioned formula.
        std::vector<Complex> v(2);
        if (std::abs(d0 - lambda) >= std::abs(d1 - lambda)) {
            v[0] = -b;
            v[1] = Complex(d0 - lambda);
        } else {
            v[0] = Complex(d1 - lambda);
            v[1] = -std::conj(b);
        }
        double nrm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        if (nrm < 1e-300) return {Complex(1), Complex(0)};
        v[0] /= nrm;
        v[1] /= nrm;
        return v;
    }
    return eigvec_inverse_iteration(a, lambda);
}

std::vector<std::vector<Complex>> cluster_vectors(const HermitianMatrix& a, const Vec& evs,
                                                  int lo, int hi, double scale) {
    const int n = a.dim();
    std::vector<std::vector<Complex>> vs;
    bool degenerate = false;
    for (int i = lo; i < hi; ++i)
        if (evs[std::size_t(i + 1)] - evs[std::size_t(i)] <= 1e-9 * std::max(1.0, scale))
            degenerate = true;
    if (!degenerate) {
        for (int i = lo; i <= hi; ++i) vs.push_back(eigvec_for(a, evs[std::size_t(i)]));
    } else {
        // inverse iteration cannot separate the cluster; take exact vectors
        auto full = eig_hermitian(a);
        for (int i = lo; i <= hi; ++i) {
            std::vector<Complex> v(std::size_t(n), Complex(0));
            for (int r = 0; r < n; ++r) v[std::size_t(r)] = full.vectors.at(r, i);
            vs.push_back(std::move(v));
        }
    }
    const std::size_t base = vs.size();
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = i + 1; j < base; ++j) {
            if (vs.size() >= base + 9) return vs;
            std::vector<Complex> p(std::size_t(n), Complex(0)), m(std::size_t(n), Complex(0)),
                q(std::size_t(n), Complex(0));
            for (int t = 0; t < n; ++t) {
                p[std::size_t(t)] = r * (vs[i][std::size_t(t)] + vs[j][std::size_t(t)]);
                m[std::size_t(t)] = r * (vs[i][std::size_t(t)] - vs[j][std::size_t(t)]);
                q[std::size_t(t)] = r * (vs[i][std::size_t(t)] + Complex(0, 1) * vs[j][std::size_t(t)]);
            }
            vs.push_back(std::move(p));
            vs.push_back(std::move(m));
            vs.push_back(std::move(q));
        }
    return vs;
}

double quad_form(const std::vector<Complex>& v, const HermitianMatrix& b) {
    const int n = b.dim();
    Complex s = 0;
    for (int i = 0; i < n; ++i) {
        Complex bi = 0;
        for (int j = 0; j < n; ++j) bi += b.at(i, j) * v[std::size_t(j)];
        s += std::conj(v[std::size_t(i)]) * bi;
    }
    return s.real();
}

// Min-norm element of conv{cands} + { sum_i beta_i walls_i : beta >= 0,
// blo <= sum beta <= bhi }, by projected coordinate descent on the weights.
// Used to build descent directions at kinks (eigenvalue ties, degenerate
// cone corners), where a single extreme subgradient jams the iteration.
Vec min_norm_direction(const std::vector<Vec>& cands, const std::vector<Vec>& walls, double blo,
                       double bhi) {
    const std::size_t k = cands.size();
    const std::size_t nw = walls.size();
    const std::size_t d = cands[0].size();
    std::vector<double> wgt(k, 1.0 / double(k));
    std::vector<double> beta(nw, nw ? blo / double(nw) : 0.0);
    Vec dir(d, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < d; ++j) dir[j] += wgt[i] * cands[i][j];
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < d; ++j) dir[j] += beta[i] * walls[i][j];

    auto transfer = [&](const Vec& pa, const Vec& pb, double lo_t, double hi_t) {
        // exact line search for dir + t (pa - pb), t in [lo_t, hi_t]
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double diff = pa[j] - pb[j];
            num += dir[j] * diff;
            den += diff * diff;
        }
        if (den <= 1e-30) return 0.0;
        double t = std::clamp(-num / den, lo_t, hi_t);
        if (t != 0.0)
            for (std::size_t j = 0; j < d; ++j) dir[j] += t * (pa[j] - pb[j]);
        return t;
    };

    for (int pass = 0; pass < 60; ++pass) {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                double t = transfer(cands[a], cands[b], -wgt[a], wgt[b]);
                wgt[a] += t;
                wgt[b] -= t;
            }
        // pairwise transfers between walls keep the total weight fixed
        for (std::size_t a = 0; a < nw; ++a)
            for (std::size_t b = a + 1; b < nw; ++b) {
                double t = transfer(walls[a], walls[b], -beta[a], beta[b]);
                beta[a] += t;
                beta[b] -= t;
            }
        // per-wall weight adjustment within the aggregate budget
        if (nw) {
            double total = 0.0;
            for (double bi : beta) total += bi;
            for (std::size_t a = 0; a < nw; ++a) {
                double num = 0.0, den = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    num += dir[j] * walls[a][j];
                    den += walls[a][j] * walls[a][j];
                }
                if (den <= 1e-30) continue;
                double t = std::clamp(-num / den, std::max(-beta[a], blo - total),
                                      bhi - total);
                if (t == 0.0) continue;
                beta[a] += t;
                total += t;
                for (std::size_t j = 0; j < d; ++j) dir[j] += t * walls[a][j];
            }
        }
    }
    return dir;
}

struct Workspace {
    const ConeDistanceProblem* p;
    int nc, ns, dim;
    HermitianMatrix mbuf, pbuf;

    explicit Workspace(const ConeDistanceProblem& prob)
        : p(&prob), nc(int(prob.cone_basis.size())), ns(int(prob.coset_basis.size())),
          dim(nc + ns), mbuf(prob.target.dim()), pbuf(prob.target.dim()) {}

    const HermitianMatrix& assemble(const Vec& z) {
        mbuf = p->target;
        for (int i = 0; i < nc; ++i) mbuf.add_scaled(z[std::size_t(i)], p->cone_basis[std::size_t(i)]);
        for (int l = 0; l < ns; ++l)
            mbuf.add_scaled(z[std::size_t(nc + l)], p->coset_basis[std::size_t(l)]);
        return mbuf;
    }

    const HermitianMatrix& cone_part(const Vec& z) {
        pbuf = HermitianMatrix(p->target.dim());
        for (int i = 0; i < nc; ++i) pbuf.add_scaled(z[std::size_t(i)], p->cone_basis[std::size_t(i)]);
        return pbuf;
    }
};

struct DirectionData {
    double f = 0.0;
    double norm_part = 0.0;
    double infeas = 0.0;
    Vec dir;
};

// Penalized objective value and an eps-active min-norm descent direction at
// z. The candidate hull covers every eigenvalue branch within eps_act of the
// norm (with full clusters at degenerate extremes) and the penalty wall
// carries the dyad hull of the bottom cluster of the cone part.
DirectionData build_direction(Workspace& w, const ConeDistanceProblem& p, const Vec& z,
                              double eps_act, double mu, double scale) {
    DirectionData out;
    const HermitianMatrix& m = w.assemble(z);
    Vec evs;
    all_eigenvalues(m, evs);
    const int nd = int(evs.size());
    const double lmin = evs.front(), lmax = evs.back();
    out.norm_part = std::max(std::abs(lmin), std::abs(lmax));

    auto quad_candidates = [&](const HermitianMatrix& mat, int lo, int hi, const Vec& evals,
                               double sgn, double factor, std::vector<Vec>& into, bool cone_only) {
        for (const auto& v : cluster_vectors(mat, evals, lo, hi, scale)) {
            Vec c(std::size_t(w.dim), 0.0);
            for (int i = 0; i < w.nc; ++i)
                c[std::size_t(i)] = factor * sgn * quad_form(v, p.cone_basis[std::size_t(i)]);
            if (!cone_only)
                for (int l = 0; l < w.ns; ++l)
                    c[std::size_t(w.nc + l)] =
                        factor * sgn * quad_form(v, p.coset_basis[std::size_t(l)]);
            into.push_back(std::move(c));
        }
    };

    std::vector<Vec> cands;
    if (out.norm_part > 0.0) {
        if (lmax >= out.norm_part - eps_act) {
            int lo = nd - 1;
            while (lo > 0 && evs[std::size_t(lo - 1)] >= lmax - eps_act && nd - lo < 3) --lo;
            quad_candidates(m, lo, nd - 1, evs, 1.0, 1.0, cands, false);
        }
        if (-lmin >= out.norm_part - eps_act) {
            int hi = 0;
            while (hi + 1 < nd && evs[std::size_t(hi + 1)] <= lmin + eps_act && hi < 2) ++hi;
            quad_candidates(m, 0, hi, evs, -1.0, 1.0, cands, false);
        }
    }
    if (cands.empty()) cands.push_back(Vec(std::size_t(w.dim), 0.0));

    std::vector<Vec> walls;
    double blo = 0.0, bhi = 0.0;
    if (w.nc > 0) {
        const HermitianMatrix& pc = w.cone_part(z);
        Vec pev;
        all_eigenvalues(pc, pev);
        if (pev.front() < 0.0) out.infeas = -pev.front();
        if (pev.front() <= eps_act) {
            const int pn = int(pev.size());
            int hi = 0;
            while (hi + 1 < pn && pev[std::size_t(hi + 1)] <= pev.front() + eps_act && hi < 2) ++hi;
            quad_candidates(pc, 0, hi, pev, -1.0, mu, walls, true);
            if (pev.front() < 0.0) blo = bhi = 1.0; // strictly infeasible: full weight
            else { blo = 0.0; bhi = 1.0; }          // at the boundary: a segment
        }
    }

    out.f = out.norm_part + mu * out.infeas;
    if (cands.size() == 1 && walls.empty()) {
        out.dir = cands[0];
    } else if (cands.size() == 1 && walls.size() == 1 && blo == bhi) {
        out.dir = cands[0];
        for (int i = 0; i < w.dim; ++i) out.dir[std::size_t(i)] += blo * walls[0][std::size_t(i)];
    } else {
        out.dir = min_norm_direction(cands, walls, blo, bhi);
    }
    return out;
}

} // namespace

void ConeDistanceProblem::validate() const {
    const int d = target.dim();
    // Cone and coset spans may overlap (quotient problems place the ideal
    // inside the parent), so independence is required per basis, not jointly.
    auto check = [d](const std::vector<HermitianMatrix>& basis, const char* name) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].dim() != d)
                throw ValidationError(std::string("ConeDistanceProblem: ") + name + " matrix " +
                                      std::to_string(i) + " has dimension " +
                                      std::to_string(basis[i].dim()) + ", target has " +
                                      std::to_string(d));
        if (basis.empty()) return;
        const int r = int(basis.size());
        HermitianMatrix gram(r);
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                double g = trace_inner(basis[std::size_t(i)], basis[std::size_t(j)]);
                gram.at(i, j) = g;
                gram.at(j, i) = g;
            }
        auto eig = eig_hermitian(gram);
        if (eig.lambda_min() <= 1e-10)
            throw ValidationError(std::string("ConeDistanceProblem: ") + name +
                                  " not linearly independent (Gram min eigenvalue " +
                                  std::to_string(eig.lambda_min()) + ")");
    };
    check(cone_basis, "cone_basis");
    check(coset_basis, "coset_basis");
}

Vec opnorm_subgradient(const HermitianMatrix& m, const std::vector<HermitianMatrix>& basis) {
    for (const auto& b : basis)
        if (b.dim() != m.dim()) throw ValidationError("opnorm_subgradient: dimension mismatch");
    double lmin, lmax;
    extreme_eigenvalues(m, lmin, lmax);
    double lam = std::abs(lmax) >= std::abs(lmin) ? lmax : lmin;
    double sgn = lam > 0 ? 1.0 : (lam < 0 ? -1.0 : 0.0);
    Vec g(basis.size(), 0.0);
    if (sgn == 0.0) return g;
    auto v = eigvec_for(m, lam);
    for (std::size_t i = 0; i < basis.size(); ++i) g[i] = sgn * quad_form(v, basis[i]);
    return g;
}

SolveReport min_opnorm_over_cone(const ConeDistanceProblem& p, const SolverConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw ValidationError("SolverConfig: tol must be positive");
    if (cfg.max_iter < 1) throw ValidationError("SolverConfig: max_iter must be >= 1");
    p.validate();

    Workspace w(p);
    const double tol = cfg.tol;

    SolveReport rep;
    Vec z(std::size_t(w.dim), 0.0);
    if (cfg.seed != 0 && w.dim > 0) {
        Rng rng(cfg.seed);
        double scale0 = std::max(op_norm(p.target), 1.0);
        double bmax = 1.0;
        for (const auto& b : p.cone_basis) bmax = std::max(bmax, b.frobenius_norm());
        for (const auto& b : p.coset_basis) bmax = std::max(bmax, b.frobenius_norm());
        for (auto& zi : z) zi = 0.5 * scale0 / bmax * rng.normal();
    }

    auto eval_point = [&](const Vec& zz, double& norm_part, double& infeas) {
        double lmin, lmax;
        extreme_eigenvalues(w.assemble(zz), lmin, lmax);
        norm_part = std::max(std::abs(lmin), std::abs(lmax));
        infeas = 0.0;
        if (w.nc > 0) {
            double pmin, pmax;
            extreme_eigenvalues(w.cone_part(zz), pmin, pmax);
            infeas = std::max(0.0, -pmin);
        }
    };

    // Scale anchors come from the target (the canonical start), so seeded
    // restarts solve the same tolerance profile as the zero start.
    double a_min, a_max;
    extreme_eigenvalues(p.target, a_min, a_max);
    const double a_norm = std::max(std::abs(a_min), std::abs(a_max));
    // The feasibility-repair amplification is scale-invariant cone geometry,
    // so the penalty weight gets a scale-free floor; otherwise small-scale
    // problems run an inexact penalty and report infeasible undershoots.
    double mu = cfg.penalty_mu > 0.0 ? cfg.penalty_mu : 64.0 * std::max(a_norm, 1.0);
    const double scale = std::max(a_norm, 1.0);

    double f0_norm, f0_in;
    eval_point(z, f0_norm, f0_in);

    if (w.dim == 0) {
        rep.value = f0_norm;
        rep.converged = true;
        rep.value_history_tail = {f0_norm};
        return rep;
    }

    double coset_box = cfg.coset_box;
    int box_escalations = 0;

    Vec z_best = z;
    double f_best = f0_norm + mu * f0_in;
    double delta = std::max(0.02 * std::max(f_best, 1.0), 50.0 * tol);
    // Accuracy is proportional to the problem scale (homogeneity of the
    // distance), so the level floor scales too, in both directions. The
    // stall threshold scales only downward: staying under tol keeps the
    // convergence contract intact for large problems.
    const double delta_floor = 0.25 * tol * std::max(a_norm, tol);
    const double imp_tol = tol * std::clamp(a_norm, tol, 1.0);
    const double delta_ceil = std::max(0.25 * std::max(f_best, 1.0), 100.0 * tol);
    const int window = 150;

    std::deque<double> tail;
    auto push_tail = [&](double v) {
        tail.push_back(v);
        if (tail.size() > 10) tail.pop_front();
    };
    push_tail(f_best);

    StepRule rule = cfg.step_rule;
    int iters = 0;
    int penalty_escalations = 0;
    bool converged = false;

    double window_best = f_best;
    double check_best = f_best;
    int since_improvement = 0;
    double eps_mult = 1.0; // inflates the kink band while the run stalls
    Vec g(std::size_t(w.dim), 0.0);

    while (iters < cfg.max_iter) {
        ++iters;
        // Kink activation width, tied to the Polyak level: wide bands early
        // (robust descent through kinks), tol-level bands at the end (sharp
        // stationarity certificates). Stalls inflate the band in search of
        // the true kink spread; overshoots deflate it again.
        if (since_improvement > 0 && since_improvement % 100 == 0 && eps_mult < 256.0)
            eps_mult *= 2.0;
        const double eps_act = std::max(delta, 2.0 * delta_floor) * eps_mult;

        DirectionData dd = build_direction(w, p, z, eps_act, mu, scale);
        g = dd.dir;
        double f = dd.f;
        push_tail(f);
        if (f < f_best - 1e-15) {
            f_best = f;
            z_best = z;
            since_improvement = 0;
            eps_mult = 1.0;
        } else {
            ++since_improvement;
        }

        double gnorm2 = 0.0;
        for (double gi : g) gnorm2 += gi * gi;
        if (gnorm2 <= 1e-20 * std::max(1.0, scale * scale)) {
            if (eps_mult > 1.0) {
                // The inflated hull swallowed the descent direction; deflate
                // rather than declare stationarity at an inflated band.
                eps_mult *= 0.5;
                continue;
            }
            // eps_act-stationary: the candidate hull contains ~0. Certifies
            // optimality to within the current band; tighten or stop.
            if (delta <= 2.0 * delta_floor) {
                double nb, ib;
                eval_point(z_best, nb, ib);
                if (ib <= tol) {
                    converged = true;
                    break;
                }
                if (penalty_escalations >= 4) break;
                mu *= 2.0;
                ++penalty_escalations;
                continue;
            }
            delta = std::max(0.5 * delta, delta_floor);
            continue;
        }

        double step;
        if (rule == StepRule::polyak_estimate) {
            step = (f - (f_best - delta)) / gnorm2;
        } else {
            step = 0.05 * scale / (std::sqrt(double(iters)) * std::sqrt(gnorm2));
        }
        double disp = step * std::sqrt(gnorm2);
        double znorm = 0.0;
        for (double zi : z) znorm += zi * zi;
        // Geometric headroom: enough for the unbounded coset chase to double
        // its way out, without wild jumps elsewhere.
        double max_disp = 4.0 * (1.0 + std::sqrt(znorm));
        if (disp > max_disp) step *= max_disp / disp;

        for (int i = 0; i < w.dim; ++i) z[std::size_t(i)] -= step * g[std::size_t(i)];
        bool box_hit = false;
        for (int l = 0; l < w.ns; ++l) {
            double& s = z[std::size_t(w.nc + l)];
            if (s > coset_box) {
                s = coset_box;
                box_hit = true;
            } else if (s < -coset_box) {
                s = -coset_box;
                box_hit = true;
            }
        }
        if (box_hit && box_escalations < 2) {
            coset_box *= 10.0;
            ++box_escalations;
        }

        if (iters % window == 0 && rule == StepRule::polyak_estimate) {
            // Adaptive level control: tighten the target on stalls, stretch
            // it while the run is making strong progress (this is what keeps
            // the unbounded coset chase alive).
            double progress = window_best - f_best;
            if (progress < 0.25 * delta) delta = std::max(0.5 * delta, delta_floor);
            else if (progress > 2.0 * delta) delta = std::min(2.0 * delta, delta_ceil);
            window_best = f_best;
        }
        if (rule == StepRule::polyak_estimate && since_improvement > 3000 && delta <= 2.0 * delta_floor)
            rule = StepRule::inv_sqrt;

        if (iters % 50 == 0 && iters >= 200) {
            double improved = check_best - f_best;
            check_best = f_best;
            if (improved < imp_tol && delta <= 2.0 * delta_floor) {
                double nb, ib;
                eval_point(z_best, nb, ib);
                if (ib <= tol) {
                    converged = true;
                    break;
                }
                if (penalty_escalations < 4) {
                    mu *= 2.0;
                    ++penalty_escalations;
                    f_best = nb + mu * ib;
                    z = z_best;
                    delta = std::max(delta, 100.0 * tol);
                    window_best = f_best;
                    check_best = f_best;
                }
            }
        }
    }

    // Endgame polish: exact line searches along min-norm directions of the
    // eps-active hull at the incumbent. Monotone, so it can only improve;
    // grinds out the last tol-level rattle the subgradient steps leave.
    {
        auto penalized = [&](const Vec& zz) {
            double nb2, ib2;
            eval_point(zz, nb2, ib2);
            return nb2 + mu * ib2;
        };
        auto line_search = [&](const Vec& d, double dn2, double fb) {
            double a = 0.0, b = 2.0 * fb / dn2; // value >= 0 brackets the step
            const double gr = 0.6180339887498949;
            auto at_t = [&](double t) {
                Vec zz = z_best;
                for (int i = 0; i < w.dim; ++i) zz[std::size_t(i)] -= t * d[std::size_t(i)];
                return zz;
            };
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = penalized(at_t(x1)), f2 = penalized(at_t(x2));
            for (int it = 0; it < 36; ++it) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = penalized(at_t(x1));
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = penalized(at_t(x2));
                }
            }
            return std::pair<double, double>(f1 <= f2 ? x1 : x2, std::min(f1, f2));
        };

        double fb = penalized(z_best);
        const double bands[6] = {2.0, 8.0, 32.0, 128.0, 512.0, 2048.0};
        for (int round = 0; round < 80; ++round) {
            bool improved = false;
            for (double band : bands) {
                Vec d = build_direction(w, p, z_best, band * delta_floor, mu, scale).dir;
                double dn2 = 0.0;
                for (double di : d) dn2 += di * di;
                if (dn2 <= 1e-20 * std::max(1.0, scale * scale)) continue;
                auto [tstar, fstar] = line_search(d, dn2, fb);
                if (fstar < fb - 1e-15) {
                    for (int i = 0; i < w.dim; ++i)
                        z_best[std::size_t(i)] -= tstar * d[std::size_t(i)];
                    fb = fstar;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        f_best = std::min(f_best, fb);
    }

    double nb, ib;
    eval_point(z_best, nb, ib);
    rep.value = nb;
    rep.infeasibility = ib;
    rep.argmin_coeffs = z_best;
    rep.iterations = iters;
    rep.converged = converged && ib <= tol;
    rep.value_history_tail.assign(tail.begin(), tail.end());
    return rep;
}

bool certify_value(const ConeDistanceProblem& p, double claimed, int probes, std::uint64_t seed,
                   const SolverConfig& cfg) {
    if (claimed < 0.0) throw ValidationError("certify_value: claimed value must be >= 0");
    SolverConfig re = cfg;
    re.seed = Rng::derive(seed, 0xC0FFEE) | 1; // nonzero: forces a random restart
    SolveReport alt = min_opnorm_over_cone(p, re);
    if (std::abs(alt.value - claimed) > 5.0 * cfg.tol) return false;

    Workspace w(p);
    if (w.dim == 0) return true;
    Rng rng(Rng::derive(seed, 0xFACADE));
    double zs = 0.0;
    for (double v : alt.argmin_coeffs) zs = std::max(zs, std::abs(v));
    double radius = std::max(1.0, zs) * 0.1;
    int accepted = 0;
    for (int it = 0; it < probes * 4 && accepted < probes; ++it) {
        Vec z = alt.argmin_coeffs;
        for (auto& zi : z) zi += radius * rng.normal();
        double infeas = 0.0;
        if (w.nc > 0) {
            double pmin, pmax;
            extreme_eigenvalues(w.cone_part(z), pmin, pmax);
            infeas = std::max(0.0, -pmin);
        }
        if (infeas > cfg.tol) continue; // feasible probes only
        ++accepted;
        double lmin, lmax;
        extreme_eigenvalues(w.assemble(z), lmin, lmax);
        double obj = std::max(std::abs(lmin), std::abs(lmax));
        if (obj < claimed - 10.0 * cfg.tol) return false;
    }
    return true;
}

} // namespace gaugekit
