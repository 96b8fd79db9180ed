#include "gaugekit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugekit/lp.hpp"
#include "gaugekit/rng.hpp"

namespace gaugekit {

namespace {

double vec_norm(const Vec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Complex coordinates of an arbitrary block in the complex span of a
// Hermitian basis: split b = h1 + i h2 with h1, h2 Hermitian and project.
std::vector<Complex> complex_coords(const OperatorSpace& v, const std::vector<Complex>& block,
                                    double* residual) {
    const int m = v.ambient_dim();
    std::vector<Complex> h1(std::size_t(m) * m), h2(std::size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Complex bij = block[std::size_t(i) * m + j];
            Complex bji = std::conj(block[std::size_t(j) * m + i]);
            h1[std::size_t(i) * m + j] = 0.5 * (bij + bji);
            h2[std::size_t(i) * m + j] = Complex(0, -0.5) * (bij - bji);
        }
    double r1 = 0, r2 = 0;
    Vec c1 = v.coords(HermitianMatrix::from_raw(m, h1), &r1);
    Vec c2 = v.coords(HermitianMatrix::from_raw(m, h2), &r2);
    if (residual) *residual = std::sqrt(r1 * r1 + r2 * r2);
    std::vector<Complex> z(c1.size());
    for (std::size_t t = 0; t < c1.size(); ++t) z[t] = Complex(c1[t], c2[t]);
    return z;
}

std::vector<Vec> ball_vertices(const PolyNorm& norm) {
    if (norm.kind == PolyNorm::Kind::polytope) return norm.vertices;
    // Sup norm: the 2^d sign vectors.
    std::vector<Vec> verts;
    const int d = norm.dim;
    for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
        Vec v(std::size_t(d), 0.0);
        for (int i = 0; i < d; ++i) v[std::size_t(i)] = (mask >> i) & 1 ? 1.0 : -1.0;
        verts.push_back(std::move(v));
    }
    return verts;
}

} // namespace

Space::Space(PolySpace p) : data_(std::move(p)) {
    if (poly().norm.dim != poly().cone.dim)
        throw ValidationError("Space: polyhedral norm and cone dimensions differ");
}

Space::Space(OperatorSpace v)
    : data_(std::move(v)),
      levels_(std::make_shared<std::vector<std::shared_ptr<const MatrixLevel>>>()) {}

int Space::dim_sa() const { return is_poly() ? poly().norm.dim : op().dim_sa(); }

int Space::dim_sa(int level) const {
    if (is_poly()) {
        if (level != 1) throw ValidationError("Space: polyhedral spaces have level 1 only");
        return poly().norm.dim;
    }
    return int(this->level(level).basis().size());
}

const MatrixLevel& Space::level(int n) const {
    if (is_poly()) throw ValidationError("Space: polyhedral spaces have no matrix levels");
    if (n < 1) throw ValidationError("Space: level must be >= 1");
    auto& cache = *levels_;
    if (int(cache.size()) < n) cache.resize(std::size_t(n));
    if (!cache[std::size_t(n - 1)])
        cache[std::size_t(n - 1)] = std::make_shared<MatrixLevel>(op(), n);
    return *cache[std::size_t(n - 1)];
}

double Space::gauge(int level, const Vec& coords, const SolverConfig& cfg) const {
    if (is_poly()) {
        if (level != 1) throw ValidationError("Space: polyhedral spaces have level 1 only");
        return d_gauge_exact(poly().norm, poly().cone, coords);
    }
    const MatrixLevel& lvl = this->level(level);
    return order_gauge(lvl, lvl.realize(coords), cfg).value;
}

double Space::conjugate_gauge(int level, const Vec& coords, const SolverConfig& cfg) const {
    Vec neg(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) neg[i] = -coords[i];
    return gauge(level, neg, cfg);
}

double Space::induced_norm(int level, const Vec& coords, const SolverConfig& cfg) const {
    return std::max(gauge(level, coords, cfg), conjugate_gauge(level, coords, cfg));
}

LinearMap::LinearMap(Space dom, Space cod, std::vector<Vec> m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
    if (int(matrix.size()) != codomain.dim_sa())
        throw ValidationError("LinearMap: expected " + std::to_string(codomain.dim_sa()) +
                              " rows, got " + std::to_string(matrix.size()));
    for (const auto& row : matrix)
        if (int(row.size()) != domain.dim_sa())
            throw ValidationError("LinearMap: row length does not match domain dimension");
}

Vec LinearMap::apply(const Vec& x) const {
    if (int(x.size()) != domain.dim_sa())
        throw ValidationError("LinearMap::apply: coordinate dimension mismatch");
    Vec y(matrix.size(), 0.0);
    for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += matrix[i][j] * x[j];
    return y;
}

LinearMap identity_map(const Space& s) {
    const int d = s.dim_sa();
    std::vector<Vec> m(std::size_t(d), Vec(std::size_t(d), 0.0));
    for (int i = 0; i < d; ++i) m[std::size_t(i)][std::size_t(i)] = 1.0;
    return LinearMap(s, s, std::move(m));
}

LinearMap zero_map(const Space& dom, const Space& cod) {
    std::vector<Vec> m(std::size_t(cod.dim_sa()), Vec(std::size_t(dom.dim_sa()), 0.0));
    return LinearMap(dom, cod, std::move(m));
}

LinearMap compose(const LinearMap& f, const LinearMap& g) {
    if (f.domain.dim_sa() != g.codomain.dim_sa())
        throw ValidationError("compose: inner dimensions do not match");
    const std::size_t rows = f.matrix.size(), inner = std::size_t(f.domain.dim_sa()),
                      cols = std::size_t(g.domain.dim_sa());
    std::vector<Vec> m(rows, Vec(cols, 0.0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            double fik = f.matrix[i][k];
            if (fik == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] += fik * g.matrix[k][j];
        }
    return LinearMap(g.domain, f.codomain, std::move(m));
}

LinearMap congruence_map(const OperatorSpace& dom, const OperatorSpace& cod, const RectMatrix& z) {
    if (z.rows() != dom.ambient_dim() || z.cols() != cod.ambient_dim())
        throw ValidationError("congruence_map: Z must map the codomain space into the domain "
                              "space (shape m_dom x m_cod)");
    std::vector<Vec> m;
    RectMatrix zadj = z.adjoint();
    for (int t = 0; t < cod.dim_sa(); ++t) m.emplace_back(std::size_t(dom.dim_sa()), 0.0);
    for (int j = 0; j < dom.dim_sa(); ++j) {
        HermitianMatrix img = congruence(zadj, dom.basis()[std::size_t(j)]); // Z* B Z
        double res = 0.0;
        Vec c = cod.coords(img, &res);
        if (res > 1e-8 * std::max(1.0, img.frobenius_norm()))
            throw ValidationError("congruence_map: image of basis element " + std::to_string(j) +
                                  " falls outside the codomain span");
        for (int t = 0; t < cod.dim_sa(); ++t) m[std::size_t(t)][std::size_t(j)] = c[std::size_t(t)];
    }
    return LinearMap(Space(dom), Space(cod), std::move(m));
}

LinearMap transpose_map(int m) {
    OperatorSpace v = OperatorSpace::full(m);
    std::vector<Vec> mat;
    for (int t = 0; t < v.dim_sa(); ++t) mat.emplace_back(std::size_t(v.dim_sa()), 0.0);
    for (int j = 0; j < v.dim_sa(); ++j) {
        const HermitianMatrix& b = v.basis()[std::size_t(j)];
        HermitianMatrix tb(m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) tb.at(i, k) = std::conj(b.at(i, k));
        Vec c = v.coords(tb);
        for (int t = 0; t < v.dim_sa(); ++t) mat[std::size_t(t)][std::size_t(j)] = c[std::size_t(t)];
    }
    return LinearMap(Space(v), Space(v), std::move(mat));
}

HermitianMatrix apply_level(const LinearMap& phi, int n, const HermitianMatrix& a) {
    if (phi.domain.is_poly() || phi.codomain.is_poly()) {
        if (n != 1) throw ValidationError("apply_level: polyhedral maps act at level 1 only");
        throw ValidationError("apply_level: polyhedral maps act on coordinate vectors");
    }
    const OperatorSpace& dom = phi.domain.op();
    const OperatorSpace& cod = phi.codomain.op();
    const int md = dom.ambient_dim(), mc = cod.ambient_dim();
    if (a.dim() != n * md) throw ValidationError("apply_level: element has wrong dimension");

    std::vector<Complex> out(std::size_t(n * mc) * std::size_t(n * mc), Complex(0));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            std::vector<Complex> blk(std::size_t(md) * md);
            for (int i = 0; i < md; ++i)
                for (int j = 0; j < md; ++j)
                    blk[std::size_t(i) * md + j] = a.at(p * md + i, q * md + j);
            double res = 0.0;
            auto z = complex_coords(dom, blk, &res);
            if (res > 1e-8 * std::max(1.0, a.frobenius_norm()))
                throw MembershipError("apply_level: block (" + std::to_string(p) + "," +
                                      std::to_string(q) + ") outside the domain span");
            // w = M z entrywise on the complex coordinates
            for (int t = 0; t < cod.dim_sa(); ++t) {
                Complex wt = 0;
                for (int s = 0; s < dom.dim_sa(); ++s)
                    wt += phi.matrix[std::size_t(t)][std::size_t(s)] * z[std::size_t(s)];
                if (wt == Complex(0)) continue;
                const HermitianMatrix& c = cod.basis()[std::size_t(t)];
                for (int i = 0; i < mc; ++i)
                    for (int j = 0; j < mc; ++j)
                        out[std::size_t(p * mc + i) * std::size_t(n * mc) + std::size_t(q * mc + j)] +=
                            wt * c.at(i, j);
            }
        }
    return HermitianMatrix::from_raw(n * mc, std::move(out));
}

LinearMap amplified_map(const LinearMap& phi, int n) {
    if (n == 1) return phi;
    if (phi.domain.is_poly() || phi.codomain.is_poly())
        throw ValidationError("amplified_map: polyhedral maps amplify at level 1 only");
    const MatrixLevel& dl = phi.domain.level(n);
    const MatrixLevel& cl = phi.codomain.level(n);
    OperatorSpace amp_dom(dl.ambient_dim(), dl.basis());
    OperatorSpace amp_cod(cl.ambient_dim(), cl.basis());
    std::vector<Vec> m(std::size_t(amp_cod.dim_sa()), Vec(std::size_t(amp_dom.dim_sa()), 0.0));
    for (int j = 0; j < amp_dom.dim_sa(); ++j) {
        HermitianMatrix img = apply_level(phi, n, amp_dom.basis()[std::size_t(j)]);
        Vec c = amp_cod.coords(img);
        for (int t = 0; t < amp_cod.dim_sa(); ++t) m[std::size_t(t)][std::size_t(j)] = c[std::size_t(t)];
    }
    return LinearMap(Space(std::move(amp_dom)), Space(std::move(amp_cod)), std::move(m));
}

namespace {

// Image coordinates of a level-n element given by amplified coordinates.
Vec apply_at_level(const LinearMap& phi, int n, const Vec& coords) {
    if (n == 1) return phi.apply(coords);
    const MatrixLevel& dl = phi.domain.level(n);
    const MatrixLevel& cl = phi.codomain.level(n);
    HermitianMatrix img = apply_level(phi, n, dl.realize(coords));
    return cl.coords(img);
}

} // namespace

GaugeNormEstimate gauge_norm(const LinearMap& phi, int max_level, int trials, std::uint64_t seed,
                             const SolverConfig& cfg) {
    if (!phi.selfadjoint_flag)
        throw ValidationError("gauge_norm: map must be flagged self-adjoint");
    GaugeNormEstimate est;

    if (phi.domain.is_poly() && phi.codomain.is_poly()) {
        // Exact sup over the gauge ball: recession directions first, then the
        // vertices of the domain unit ball.
        const PolySpace& dom = phi.domain.poly();
        const PolySpace& cod = phi.codomain.poly();
        est.exact = true;
        est.levels_checked = {1};
        for (const auto& g : dom.cone.generators) {
            Vec ng(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) ng[i] = -g[i];
            if (d_gauge_exact(cod.norm, cod.cone, phi.apply(ng)) > 1e-9) {
                est.unbounded = true;
                est.witness = ng;
                return est;
            }
        }
        for (const auto& v : ball_vertices(dom.norm)) {
            double val = d_gauge_exact(cod.norm, cod.cone, phi.apply(v));
            if (val > est.lower_bound) {
                est.lower_bound = val;
                est.witness = v;
            }
        }
        return est;
    }

    Rng rng(seed);
    const int levels = std::min({max_level, phi.domain.max_level(), phi.codomain.max_level()});
    double best = 0.0;
    int best_level = 1;
    Vec best_coords;
    for (int n = 1; n <= levels; ++n) {
        est.levels_checked.push_back(n);
        const int d = phi.domain.dim_sa(n);
        for (int it = 0; it < trials; ++it) {
            Vec x = rng.normal_vector(std::size_t(d));
            double nu = phi.domain.gauge(n, x, cfg);
            double om = phi.codomain.gauge(n, apply_at_level(phi, n, x), cfg);
            if (nu <= 1e-9 * (1.0 + vec_norm(x))) {
                if (om > 1e-6) {
                    est.unbounded = true;
                    est.witness = x;
                    est.witness_level = n;
                    return est;
                }
                continue;
            }
            double ratio = om / nu;
            if (ratio > best) {
                best = ratio;
                best_level = n;
                best_coords = x;
            }
        }
    }
    // Local coordinate ascent around the best sample.
    if (!best_coords.empty()) {
        double h = 0.25;
        Vec x = best_coords;
        for (int step = 0; step < 50; ++step) {
            std::size_t i = std::size_t(step) % x.size();
            bool improved = false;
            for (double sgn : {1.0, -1.0}) {
                Vec y = x;
                y[i] += sgn * h;
                double nu = phi.domain.gauge(best_level, y, cfg);
                if (nu <= 1e-9) continue;
                double om = phi.codomain.gauge(best_level, apply_at_level(phi, best_level, y), cfg);
                if (om / nu > best + 1e-12) {
                    best = om / nu;
                    x = y;
                    improved = true;
                    break;
                }
            }
            h *= improved ? 1.5 : 0.7;
        }
        best_coords = x;
        // Freeze the reported bound to a fresh evaluation of the witness.
        double nu = phi.domain.gauge(best_level, best_coords, cfg);
        if (nu > 0.0) {
            for (auto& c : best_coords) c /= nu;
            best = phi.codomain.gauge(best_level, apply_at_level(phi, best_level, best_coords), cfg);
        }
    }
    est.lower_bound = best;
    est.witness = best_coords;
    est.witness_level = best_level;
    return est;
}

CpccReport check_cpcc(const LinearMap& phi, int max_level, int trials, std::uint64_t seed,
                      const SolverConfig& cfg) {
    if (!phi.selfadjoint_flag) throw ValidationError("check_cpcc: map must be flagged self-adjoint");
    Rng rng(seed);
    CpccReport rep;
    rep.trials = trials;
    const int levels = std::min({max_level, phi.domain.max_level(), phi.codomain.max_level()});
    rep.levels_checked = levels;

    for (int n = 1; n <= levels; ++n) {
        // Positivity on sampled cone members.
        std::vector<Vec> cone_coords;
        if (phi.domain.is_poly()) {
            for (int it = 0; it < trials; ++it) {
                const auto& gens = phi.domain.poly().cone.generators;
                if (gens.empty()) break;
                Vec x(std::size_t(phi.domain.dim_sa()), 0.0);
                for (const auto& g : gens) {
                    double r = rng.uniform01();
                    for (std::size_t i = 0; i < x.size(); ++i) x[i] += r * g[i];
                }
                cone_coords.push_back(std::move(x));
            }
        } else {
            const MatrixLevel& lvl = phi.domain.level(n);
            for (auto& p : lvl.sample_cone_members(trials, rng)) {
                double nrm = op_norm(p);
                if (nrm <= 1e-12) continue;
                cone_coords.push_back(lvl.coords(p * (1.0 / nrm)));
            }
        }
        for (const auto& x : cone_coords) {
            double viol;
            if (phi.codomain.is_poly()) {
                viol = phi.codomain.conjugate_gauge(1, phi.apply(x), cfg);
            } else {
                HermitianMatrix img = phi.codomain.level(n).realize(apply_at_level(phi, n, x));
                viol = std::max(0.0, -eig_hermitian(img).lambda_min());
            }
            if (viol > rep.positivity_worst) {
                rep.positivity_worst = viol;
                rep.positivity_witness_level = n;
                if (!phi.domain.is_poly() && !phi.codomain.is_poly())
                    rep.positivity_witness = phi.domain.level(n).realize(x);
            }
        }
        // Contractivity on induced-norm-one samples.
        const int d = phi.domain.dim_sa(n);
        for (int it = 0; it < trials; ++it) {
            Vec x = rng.normal_vector(std::size_t(d));
            double nx = phi.domain.induced_norm(n, x, cfg);
            if (nx <= 1e-9) continue;
            for (auto& c : x) c /= nx;
            double ny = phi.codomain.induced_norm(n, apply_at_level(phi, n, x), cfg);
            rep.contraction_worst = std::max(rep.contraction_worst, ny - 1.0);
        }
    }
    rep.contraction_worst = std::max(rep.contraction_worst, 0.0);

    // Re-verify a positivity witness by a fresh eigenvalue check.
    if (rep.positivity_witness) {
        HermitianMatrix img =
            apply_level(phi, rep.positivity_witness_level, *rep.positivity_witness);
        double fresh = std::max(0.0, -eig_hermitian(img).lambda_min());
        if (fresh <= 0.0) {
            rep.positivity_witness.reset();
            rep.positivity_worst = 0.0;
        } else {
            rep.positivity_worst = fresh;
        }
    }
    return rep;
}

ExtensionConditionReport extension_condition(const OperatorSpace& v,
                                             const std::vector<HermitianMatrix>& s_basis,
                                             int probes, int max_level, std::uint64_t seed,
                                             const SolverConfig& cfg) {
    for (std::size_t i = 0; i < s_basis.size(); ++i) {
        double res = 0.0;
        v.coords(s_basis[i], &res);
        if (res > 1e-8 * std::max(1.0, s_basis[i].frobenius_norm()))
            throw ValidationError("extension_condition: subspace basis element " +
                                  std::to_string(i) + " is not contained in V");
    }
    OperatorSpace s(v.ambient_dim(), s_basis);
    Rng rng(seed);
    ExtensionConditionReport rep;
    rep.max_level = max_level;
    rep.probes = probes;
    bool first = true;
    for (int n = 1; n <= max_level; ++n) {
        MatrixLevel sl(s, n);
        // Structured probes first (the signed basis directions themselves),
        // then normalized random samples.
        std::vector<HermitianMatrix> samples;
        for (const auto& b : sl.basis()) {
            samples.push_back(b);
            samples.push_back(-b);
        }
        for (int it = 0; it < probes; ++it) {
            HermitianMatrix a = sl.sample(rng);
            double nrm = op_norm(a);
            if (nrm <= 1e-12) continue;
            samples.push_back(a * (1.0 / nrm));
        }
        for (const auto& a : samples) {
            double ds = order_gauge(sl, a, cfg).value;
            double dv = order_gauge(v, n, a, cfg).value;
            double gap = ds - dv;
            if (first) {
                rep.max_gap = rep.min_gap = gap;
                first = false;
            } else {
                rep.max_gap = std::max(rep.max_gap, gap);
                rep.min_gap = std::min(rep.min_gap, gap);
            }
        }
    }
    rep.extension_friendly = rep.max_gap <= 5.0 * cfg.tol;
    return rep;
}

MatrixHbResult hb_extend_matrix(const OperatorSpace& v,
                                const std::vector<HermitianMatrix>& s_basis, const Vec& f_on_s,
                                int samples, std::uint64_t seed, const SolverConfig& cfg) {
    if (s_basis.size() != f_on_s.size())
        throw ValidationError("hb_extend_matrix: one value per subspace basis element required");
    MatrixHbResult out;
    OperatorSpace s(v.ambient_dim(), s_basis);
    Rng rng(seed);

    auto d_v = [&](const HermitianMatrix& x) { return order_gauge(v, 1, x, cfg).value; };

    // Sampled precondition: f <= d_V on the subspace.
    for (int it = 0; it < samples; ++it) {
        Vec c = rng.normal_vector(s_basis.size());
        HermitianMatrix x = s.realize(c);
        double nrm = op_norm(x);
        if (nrm <= 1e-12) continue;
        double fx = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) fx += c[i] * f_on_s[i];
        double slack = fx / nrm - d_v(x * (1.0 / nrm));
        out.precondition_worst = std::max(out.precondition_worst, slack);
    }
    if (out.precondition_worst > 5.0 * cfg.tol) out.precondition_ok = false;

    // Finite LP relaxation: constraint elements are the basis directions,
    // sampled span elements, and sampled cone members.
    std::vector<HermitianMatrix> constraint_pts;
    for (const auto& b : v.basis()) {
        constraint_pts.push_back(b);
        constraint_pts.push_back(-b);
    }
    MatrixLevel l1(v, 1);
    for (auto& p : l1.sample_cone_members(samples, rng)) constraint_pts.push_back(std::move(p));
    for (int it = 0; it < samples; ++it) {
        HermitianMatrix x = l1.sample(rng);
        double nrm = op_norm(x);
        if (nrm > 1e-12) constraint_pts.push_back(x * (1.0 / nrm));
    }

    LPProblem lp;
    for (int t = 0; t < v.dim_sa(); ++t) lp.add_var(-1e6, 1e6, 0.0);
    for (const auto& x : constraint_pts) {
        Vec c = v.coords(x);
        lp.add_row(std::move(c), RowSense::le, d_v(x));
    }
    for (std::size_t i = 0; i < s_basis.size(); ++i) {
        Vec c = v.coords(s_basis[i]);
        lp.add_row(std::move(c), RowSense::eq, f_on_s[i]);
    }
    auto sol = lp_solve(lp);
    if (sol.status == LPStatus::optimal) {
        out.extended = true;
        out.functional = sol.x;
        // Residual audit on fresh samples.
        Rng rng2(Rng::derive(seed, 0xBEEF));
        for (int it = 0; it < samples; ++it) {
            HermitianMatrix x = l1.sample(rng2);
            double nrm = op_norm(x);
            if (nrm <= 1e-12) continue;
            x = x * (1.0 / nrm);
            Vec c = v.coords(x);
            double gx = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) gx += c[i] * out.functional[i];
            out.residual_worst = std::max(out.residual_worst, gx - d_v(x));
        }
    }
    out.gauge_criterion =
        extension_condition(v, s_basis, std::max(4, samples / 4), 1, Rng::derive(seed, 0xD00D), cfg);
    return out;
}

} // namespace gaugekit
