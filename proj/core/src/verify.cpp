#include "gaugekit/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gaugekit/gauge.hpp"
#include "gaugekit/poly.hpp"
#include "gaugekit/quotient.hpp"
#include "gaugekit/unitization.hpp"

namespace gaugekit {

namespace {

using CaseFn = std::function<std::pair<double, bool>(std::uint64_t seed)>;

struct CaseSpec {
    std::string tag;
    CaseFn fn;
};

SuiteResult run_cases(const std::string& suite, const std::vector<CaseSpec>& specs,
                      const VerifyOptions& opts) {
    SuiteResult result;
    result.suite_name = suite;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        SuiteCase c;
        c.proposition_tag = specs[i].tag;
        c.seed = Rng::derive(opts.seed, Rng::hash_string(suite.c_str()) ^ (i + 1));
        auto start = std::chrono::steady_clock::now();
        try {
            auto [slack, pass] = specs[i].fn(c.seed);
            c.worst_slack = slack;
            c.pass = pass;
        } catch (const std::exception&) {
            c.pass = false;
            c.worst_slack = std::numeric_limits<double>::infinity();
        }
        c.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        result.cases.push_back(std::move(c));
    }
    return result;
}

int pick_trials(const VerifyOptions& opts, int default_trials) {
    return opts.trials > 0 ? opts.trials : default_trials;
}

Vec negate(const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

HermitianMatrix random_subspace_element(const std::vector<HermitianMatrix>& basis, Rng& rng) {
    HermitianMatrix a(basis.front().dim());
    for (const auto& b : basis) a.add_scaled(rng.normal(), b);
    return a;
}

std::vector<HermitianMatrix> random_subspace(int ambient, int count, Rng& rng) {
    std::vector<HermitianMatrix> out;
    auto full = herm_basis(ambient);
    for (int k = 0; k < count; ++k) out.push_back(random_subspace_element(full, rng));
    return out;
}

} // namespace

PolySpace random_poly_space(Rng& rng, int max_dim) {
    const int d = rng.uniform_int(1, max_dim);
    std::vector<Vec> gens;
    for (int attempt = 0; attempt < 40; ++attempt) {
        gens.clear();
        int ng = rng.uniform_int(1, d + 2);
        for (int i = 0; i < ng; ++i) gens.push_back(rng.normal_vector(std::size_t(d)));
        try {
            if (PolyCone(d, gens).is_proper()) break;
        } catch (const ValidationError&) {
        }
        gens.clear();
    }
    if (gens.empty()) // fall back to the entrywise cone
        for (int i = 0; i < d; ++i) {
            Vec e(std::size_t(d), 0.0);
            e[std::size_t(i)] = 1.0;
            gens.push_back(std::move(e));
        }
    PolyCone cone(d, std::move(gens));
    if (rng.uniform01() < 0.5) return PolySpace{PolyNorm::sup(d), std::move(cone)};
    std::vector<Vec> verts;
    for (int i = 0; i < d; ++i) {
        Vec e(std::size_t(d), 0.0);
        e[std::size_t(i)] = 1.0;
        verts.push_back(e);
        verts.push_back(negate(e));
    }
    int extra = rng.uniform_int(1, d + 1);
    for (int i = 0; i < extra; ++i) {
        Vec v = rng.normal_vector(std::size_t(d));
        verts.push_back(v);
        verts.push_back(negate(v));
    }
    return PolySpace{PolyNorm::polytope(d, std::move(verts)), std::move(cone)};
}

namespace {

// ---------------------------------------------------------------- section2

std::vector<CaseSpec> section2_cases(const VerifyOptions& opts) {
    std::vector<CaseSpec> cases;

    cases.push_back({"scalar-gauge/axioms-exact", [&opts](std::uint64_t seed) {
        auto rep = check_gauge_axioms(u_gauge(), seed, pick_trials(opts, 200));
        double slack = std::max(rep.subadditivity_worst, rep.homogeneity_worst);
        // the formula is exact; the slack computation itself rounds
        return std::pair(slack, slack <= 1e-12 && rep.properness_witnessed);
    }});

    cases.push_back({"conjugate/involution", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        Gauge g = positive_part_gauge(2);
        Gauge cc = conjugate(conjugate(g));
        double worst = 0;
        for (int i = 0; i < pick_trials(opts, 50); ++i) {
            Vec x = rng.normal_vector(4);
            worst = std::max(worst, std::abs(g(x) - cc(x)));
        }
        return std::pair(worst, worst <= 1e-12);
    }});

    cases.push_back({"induced-norm/swap-symmetry", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        Gauge g = positive_part_gauge(2);
        Gauge cg = conjugate(g);
        double worst = 0;
        for (int i = 0; i < pick_trials(opts, 50); ++i) {
            Vec x = rng.normal_vector(4);
            worst = std::max(worst, std::abs(induced_norm(g, x) - induced_norm(cg, x)));
        }
        return std::pair(worst, worst <= 1e-12);
    }});

    cases.push_back({"poly-gauge/axioms-lp-exact", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int s = 0; s < pick_trials(opts, 12); ++s) {
            PolySpace sp = random_poly_space(rng, 4);
            for (int it = 0; it < 25; ++it) {
                Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
                Vec y = rng.normal_vector(std::size_t(sp.norm.dim));
                double t = rng.log_uniform(1e-2, 1e2);
                Vec xy(x.size()), tx(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) {
                    xy[i] = x[i] + y[i];
                    tx[i] = t * x[i];
                }
                double dx = d_gauge_exact(sp.norm, sp.cone, x);
                double dy = d_gauge_exact(sp.norm, sp.cone, y);
                double dxy = d_gauge_exact(sp.norm, sp.cone, xy);
                double dtx = d_gauge_exact(sp.norm, sp.cone, tx);
                worst = std::max(worst, dxy - dx - dy);
                worst = std::max(worst, std::abs(dtx - t * dx));
            }
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"poly-cone/recovery", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        int mismatches = 0;
        int total = 0;
        for (int s = 0; s < pick_trials(opts, 8); ++s) {
            PolySpace sp = random_poly_space(rng, 4);
            for (const auto& g : sp.cone.generators) {
                Vec ng = negate(g);
                if (d_gauge_exact(sp.norm, sp.cone, ng) > 1e-9) ++mismatches;
                ++total;
            }
            for (int it = 0; it < 25; ++it) {
                Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
                bool member = sp.cone.contains(x, 1e-9);
                bool recovered = d_gauge_exact(sp.norm, sp.cone, negate(x)) <= 1e-9;
                if (member != recovered) ++mismatches;
                ++total;
            }
        }
        return std::pair(double(mismatches), mismatches == 0 && total > 0);
    }});

    cases.push_back({"poly-normality/sup-entrywise", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int d = 1; d <= 4; ++d) {
            std::vector<Vec> gens;
            for (int i = 0; i < d; ++i) {
                Vec e(std::size_t(d), 0.0);
                e[std::size_t(i)] = 1.0;
                gens.push_back(std::move(e));
            }
            auto rep = check_normal_exact(PolyNorm::sup(d), PolyCone(d, gens),
                                          pick_trials(opts, 40), rng.next_u64());
            worst = std::max(worst, rep.worst_violation);
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"poly-normality/induced-norm-is-normal", [&opts](std::uint64_t seed) {
        // On arbitrary (norm, cone) data the chain inequality may fail, but
        // the norm induced by the distance gauge always satisfies it.
        Rng rng(seed);
        double worst = 0;
        for (int s = 0; s < pick_trials(opts, 6); ++s) {
            PolySpace sp = random_poly_space(rng, 4);
            auto dnorm = [&](const Vec& v) {
                return std::max(d_gauge_exact(sp.norm, sp.cone, v),
                                d_gauge_exact(sp.norm, sp.cone, negate(v)));
            };
            for (int it = 0; it < 15; ++it) {
                Vec y = rng.normal_vector(std::size_t(sp.norm.dim));
                Vec x = y, z = y;
                for (const auto& gvec : sp.cone.generators) {
                    double u = rng.uniform01(), w = rng.uniform01();
                    for (int k = 0; k < sp.norm.dim; ++k) {
                        x[std::size_t(k)] -= u * gvec[std::size_t(k)];
                        z[std::size_t(k)] += w * gvec[std::size_t(k)];
                    }
                }
                worst = std::max(worst, dnorm(y) - std::max(dnorm(x), dnorm(z)));
            }
        }
        return std::pair(std::max(worst, 0.0), worst <= 1e-9);
    }});

    cases.push_back({"order-unit-gauge/equals-distance-gauge", [&opts](std::uint64_t seed) {
        // Entrywise cone with the sup norm: the distance gauge collapses to
        // the order-unit formula max(max_i x_i, 0) for the all-ones unit.
        Rng rng(seed);
        double worst = 0;
        for (int d = 1; d <= 4; ++d) {
            std::vector<Vec> gens;
            for (int i = 0; i < d; ++i) {
                Vec e(std::size_t(d), 0.0);
                e[std::size_t(i)] = 1.0;
                gens.push_back(std::move(e));
            }
            PolyCone cone(d, gens);
            PolyNorm norm = PolyNorm::sup(d);
            for (int it = 0; it < pick_trials(opts, 25); ++it) {
                Vec x = rng.normal_vector(std::size_t(d));
                double expect = 0.0;
                for (double xi : x) expect = std::max(expect, xi);
                worst = std::max(worst, std::abs(d_gauge_exact(norm, cone, x) - expect));
            }
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"scalar-unitization/formula-and-properness", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        Gauge u = u_gauge();
        double worst = std::abs(nu1(u, {0.0}, 1.0) - 1.0);
        worst = std::max(worst, std::abs(nu1(u, {-3.0}, 1.0) - 1.0));
        bool proper = true;
        for (int it = 0; it < pick_trials(opts, 100); ++it) {
            double x = rng.normal(), lam = rng.normal();
            worst = std::max(worst, std::abs(nu1(u, {x}, 0.0) - u_gauge()({x})));
            bool zero_pair = nu1(u, {x}, lam) <= 1e-12 && nu1(u, {-x}, -lam) <= 1e-12;
            if (zero_pair && (std::abs(x) > 1e-12 || std::abs(lam) > 1e-12)) proper = false;
        }
        return std::pair(worst, worst <= 1e-12 && proper);
    }});

    cases.push_back({"functional-range/interval-endpoints", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int s = 0; s < pick_trials(opts, 10); ++s) {
            PolySpace sp = random_poly_space(rng, 4);
            for (int it = 0; it < 8; ++it) {
                Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
                auto [lo, hi] = functional_range(sp.norm, sp.cone, x); // throws on mismatch
                double dx = d_gauge_exact(sp.norm, sp.cone, x);
                double dn = d_gauge_exact(sp.norm, sp.cone, negate(x));
                worst = std::max({worst, std::abs(hi - dx), std::abs(lo + dn)});
            }
        }
        return std::pair(worst, worst <= 1e-8);
    }});

    cases.push_back({"hb-extension/poly", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        int failures = 0;
        int runs = 0;
        for (int s = 0; s < pick_trials(opts, 10); ++s) {
            PolySpace sp = random_poly_space(rng, 4);
            const int d = sp.norm.dim;
            if (d < 2) continue;
            Vec s1 = rng.normal_vector(std::size_t(d));
            double ds1 = d_gauge_exact(sp.norm, sp.cone, s1);
            double dn1 = d_gauge_exact(sp.norm, sp.cone, negate(s1));
            // any value in [-d(-s), d(s)] is contractive on the span
            double f = -dn1 + (ds1 + dn1) * rng.uniform01();
            auto res = hb_extend(sp.norm, sp.cone, {s1}, {f});
            ++runs;
            if (!res.precondition_ok || !res.extended) ++failures;
            else {
                // extension must reproduce f on the subspace
                double fs = 0;
                for (int i = 0; i < d; ++i) fs += res.functional[std::size_t(i)] * s1[std::size_t(i)];
                if (std::abs(fs - f) > 1e-7) ++failures;
            }
        }
        return std::pair(double(failures), failures == 0 && runs > 0);
    }});

    cases.push_back({"contractive-functional/positive-contractive", [&opts](std::uint64_t seed) {
        // Functionals with |f|_g <= 1 are positive on the cone and bounded
        // by the norm; exercised through the range interval.
        Rng rng(seed);
        double worst = 0;
        for (int s = 0; s < pick_trials(opts, 8); ++s) {
            PolySpace sp = random_poly_space(rng, 3);
            for (int it = 0; it < 6; ++it) {
                Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
                auto [lo, hi] = functional_range(sp.norm, sp.cone, x);
                double nx = sp.norm.value(x);
                double dx = d_gauge_exact(sp.norm, sp.cone, x);
                double dn = d_gauge_exact(sp.norm, sp.cone, negate(x));
                // interval within [-|x|, |x|] and cone members have lo = 0
                worst = std::max({worst, hi - nx, -lo - nx});
                worst = std::max(worst, std::abs(hi - dx));
                if (sp.cone.contains(x, 1e-9)) worst = std::max(worst, std::abs(dn));
            }
        }
        return std::pair(worst, worst <= 1e-8);
    }});

    cases.push_back({"poly-quotient/exactness-and-ideal", [&opts](std::uint64_t seed) {
        (void)seed;
        (void)opts;
        // R^2, sup norm, entrywise cone, S = span{e1}.
        PolyCone cone(2, {{1, 0}, {0, 1}});
        PolyNorm norm = PolyNorm::sup(2);
        std::vector<Vec> coset = {{1, 0}};
        double worst = 0;
        for (double a : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
            double q = d_gauge_quotient_exact(norm, cone, coset, {0, a});
            worst = std::max(worst, std::abs(q - std::max(a, 0.0)));
        }
        // one-sided values witness the ideal property of span{e1}
        double qp = d_gauge_quotient_exact(norm, cone, coset, {0, 1});
        double qm = d_gauge_quotient_exact(norm, cone, coset, {0, -1});
        bool witnessed = qp > 1e-6 || qm > 1e-6;
        worst = std::max(worst, std::abs(qp - 1.0));
        return std::pair(worst, worst <= 1e-9 && witnessed);
    }});

    return cases;
}

// -------------------------------------------------------------- mos-axioms

std::vector<CaseSpec> mos_cases(const VerifyOptions& opts) {
    std::vector<CaseSpec> cases;

    cases.push_back({"mos/compression-and-direct-sum-full", [&opts](std::uint64_t seed) {
        auto v = OperatorSpace::full(2);
        int lvl = std::max(2, std::min(opts.max_level + 1, 4));
        auto rep = check_mos_axioms(v, lvl, pick_trials(opts, 30), seed, opts.solver);
        double worst = std::max(rep.compression_worst, rep.directsum_worst);
        return std::pair(worst, worst <= 3e-4);
    }});

    cases.push_back({"mos/compression-and-direct-sum-subspace", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        OperatorSpace v(3, random_subspace(3, 3, rng));
        auto rep = check_mos_axioms(v, 2, pick_trials(opts, 10), rng.next_u64(), opts.solver, true);
        double worst = std::max(rep.compression_worst, rep.directsum_worst);
        return std::pair(worst, worst <= 5e-4 && rep.certified);
    }});

    cases.push_back({"mos/normality-levels", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int m : {2, 3}) {
            auto rep = check_normal_level(OperatorSpace::full(m), 2, pick_trials(opts, 8),
                                          rng.next_u64(), opts.solver);
            worst = std::max(worst, rep.worst_violation);
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"mos/normality-diagonal-lp-exact", [&opts](std::uint64_t seed) {
        // Diagonal subspaces carry an exact LP norm: chains evaluated both
        // ways must agree that the space is normal.
        Rng rng(seed);
        const int m = 3;
        PolyCone cone(m, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        PolyNorm norm = PolyNorm::sup(m);
        auto rep = check_normal_exact(norm, cone, pick_trials(opts, 60), rng.next_u64());
        return std::pair(rep.worst_violation, rep.worst_violation <= 1e-9);
    }});

    cases.push_back({"rect-norm/submultiplicative", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v = OperatorSpace::full(2);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 6); ++it) {
            // B in M_{1,2}(V): a 2 x 4 realized matrix over Herm(2)
            RectBlockMatrix b;
            b.block_rows = 1;
            b.block_cols = 2;
            RectMatrix r(2, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 4; ++j) r.at(i, j) = Complex(rng.normal(), rng.normal());
            b.realized = r;
            double nb = rect_norm(v, b, opts.solver);
            // scalar row X (1x1) and column Y (2x2): |XBY| <= |X||Y||B|
            Complex xs(rng.normal(), rng.normal());
            RectMatrix y(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) y.at(i, j) = Complex(rng.normal(), rng.normal());
            RectMatrix yk = scalar_kron(y, 2);
            RectMatrix xby(2, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 4; ++j) xby.at(i, j) = xs * r.at(i, j);
            xby = xby * yk;
            RectBlockMatrix bb;
            bb.block_rows = 1;
            bb.block_cols = 2;
            bb.realized = xby;
            double lhs = rect_norm(v, bb, opts.solver);
            worst = std::max(worst, lhs - std::abs(xs) * op_norm(y) * nb);
        }
        // degenerate anchors
        RectBlockMatrix zero;
        zero.block_rows = 1;
        zero.block_cols = 1;
        zero.realized = RectMatrix(2, 2);
        worst = std::max(worst, rect_norm(v, zero, opts.solver));
        return std::pair(worst, worst <= 1e-3);
    }});

    cases.push_back({"full-space-gauge/closed-form-agreement", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int m : {2, 3}) {
            auto basis = herm_basis(m);
            for (int it = 0; it < pick_trials(opts, 8); ++it) {
                HermitianMatrix a = coords_to_herm(m, rng.normal_vector(std::size_t(m * m)));
                ConeDistanceProblem prob{a, basis, {}};
                auto rep = min_opnorm_over_cone(prob, opts.solver);
                double truth = std::max(eig_hermitian(a).lambda_max(), 0.0);
                worst = std::max(worst, std::abs(rep.value - truth));
            }
        }
        return std::pair(worst, worst <= 2e-4);
    }});

    cases.push_back({"induced-norm/equals-op-norm", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v = OperatorSpace::full(3);
        MatrixLevel l1(v, 1);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 20); ++it) {
            HermitianMatrix a = l1.sample(rng);
            worst = std::max(worst,
                             std::abs(level_norm(l1, a, opts.solver) - op_norm(a)));
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    return cases;
}

// ------------------------------------------------------------- unitization

std::vector<CaseSpec> unitization_cases(const VerifyOptions& opts) {
    std::vector<CaseSpec> cases;

    cases.push_back({"unitization/unit-gauge-one", [&opts](std::uint64_t seed) {
        (void)seed;
        UnitizedSpace us(OperatorSpace::full(2));
        double worst = 0;
        for (int n = 1; n <= std::min(3, opts.max_level); ++n)
            worst = std::max(worst, std::abs(us.unit_gauge(n, opts.solver) - 1.0));
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"unitization/scalar-restriction", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v = OperatorSpace::full(2);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 20); ++it) {
            int n = rng.uniform_int(1, 4);
            HermitianMatrix x(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    Complex z(rng.normal(), i == j ? 0.0 : rng.normal());
                    x.at(i, j) = z;
                    x.at(j, i) = std::conj(z);
                }
            double got = u_n(v, n, HermitianMatrix(2 * n), x, opts.solver);
            double expect = std::max(eig_hermitian(x).lambda_max(), 0.0);
            worst = std::max(worst, std::abs(got - expect));
        }
        return std::pair(worst, worst <= 1e-8);
    }});

    cases.push_back({"unitization/embedding-isometric", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        int count = pick_trials(opts, 5);
        for (int it = 0; it < count; ++it) {
            OperatorSpace v = (it % 2 == 0)
                                  ? OperatorSpace::full(2)
                                  : OperatorSpace(2, random_subspace(2, 2, rng));
            int n = it == count - 1 ? 2 : 1;
            MatrixLevel lvl(v, n);
            HermitianMatrix a = lvl.sample(rng);
            double d = order_gauge(lvl, a, opts.solver).value;
            double u = u_n(v, n, a, HermitianMatrix(n), opts.solver);
            worst = std::max(worst, std::abs(u - d));
        }
        return std::pair(worst, worst <= 5e-4);
    }});

    cases.push_back({"unitization/order-unit-property", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v = OperatorSpace::full(2);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 4); ++it) {
            int n = 1 + (it % 2);
            MatrixLevel lvl(v, n);
            HermitianMatrix a = lvl.sample(rng);
            HermitianMatrix x(n);
            for (int i = 0; i < n; ++i) x.at(i, i) = rng.normal();
            double up = u_n(v, n, a, x, opts.solver);
            double um = u_n(v, n, -a, -x, opts.solver);
            double t = up + um + 1.0;
            // both t(0,I) - (a,x) and t(0,I) + (a,x) must be positive:
            // their unitization gauges of the negation vanish.
            HermitianMatrix xt1 = HermitianMatrix::identity(n) * t - x;
            HermitianMatrix xt2 = HermitianMatrix::identity(n) * t + x;
            worst = std::max(worst, u_n(v, n, a, x - HermitianMatrix::identity(n) * t,
                                        opts.solver));
            worst = std::max(worst, u_n(v, n, -a, HermitianMatrix::identity(n) * (-t) - (-x),
                                        opts.solver));
            (void)xt1;
            (void)xt2;
        }
        return std::pair(worst, worst <= 1e-5);
    }});

    cases.push_back({"unitization/monotone-feasibility", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v = OperatorSpace::full(2);
        UnitizationOptions uo;
        uo.check_monotone = true; // throws on a violated grid
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 3); ++it) {
            MatrixLevel lvl(v, 1);
            HermitianMatrix a = lvl.sample(rng);
            HermitianMatrix x(1);
            x.at(0, 0) = rng.normal();
            u_n(v, 1, a, x, opts.solver, uo);
            worst = 0;
        }
        return std::pair(worst, true);
    }});

    cases.push_back({"unitization/map-extension-positive", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto v2 = OperatorSpace::full(2);
        Space s2{v2};
        double worst = 0;
        // zero map, identity, and a compression, all unitized
        UnitizeMapReport rep;
        unitize_map(zero_map(s2, s2), 2, pick_trials(opts, 5), rng.next_u64(), opts.solver, &rep);
        worst = std::max(worst, rep.positivity_worst);
        unitize_map(identity_map(s2), 2, pick_trials(opts, 5), rng.next_u64(), opts.solver, &rep);
        worst = std::max(worst, rep.positivity_worst);
        RectMatrix e1(2, 1);
        e1.at(0, 0) = 1.0;
        auto comp = congruence_map(v2, OperatorSpace::full(1), e1);
        unitize_map(comp, 2, pick_trials(opts, 5), rng.next_u64(), opts.solver, &rep);
        worst = std::max(worst, rep.positivity_worst);
        return std::pair(worst, worst <= 1e-6);
    }});

    return cases;
}

// -------------------------------------------------------------------- maps

std::vector<CaseSpec> maps_cases(const VerifyOptions& opts) {
    std::vector<CaseSpec> cases;

    cases.push_back({"cpcc/congruence-contractions", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 4); ++it) {
            int md = rng.uniform_int(2, 3), mc = rng.uniform_int(2, 3);
            RectMatrix z(md, mc);
            for (int i = 0; i < md; ++i)
                for (int j = 0; j < mc; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
            double zn = op_norm(z);
            if (zn > 1.0)
                for (int i = 0; i < md; ++i)
                    for (int j = 0; j < mc; ++j) z.at(i, j) /= zn * (1.0 + 0.2 * rng.uniform01());
            auto phi = congruence_map(OperatorSpace::full(md), OperatorSpace::full(mc), z);
            auto rep = check_cpcc(phi, opts.max_level, 6, rng.next_u64(), opts.solver);
            worst = std::max({worst, rep.positivity_worst, rep.contraction_worst});
        }
        return std::pair(worst, worst <= 1e-5);
    }});

    cases.push_back({"cpcc/transpose-flagged", [&opts](std::uint64_t seed) {
        auto phi = transpose_map(2);
        auto rep = check_cpcc(phi, 2, std::max(12, pick_trials(opts, 12)), seed, opts.solver);
        bool witnessed = rep.positivity_witness.has_value() && rep.positivity_worst > 1e-3 &&
                         rep.positivity_witness_level == 2;
        return std::pair(rep.positivity_worst, witnessed);
    }});

    cases.push_back({"gauge-norm/identity-is-one", [&opts](std::uint64_t seed) {
        auto phi = identity_map(Space{OperatorSpace::full(2)});
        auto est = gauge_norm(phi, 2, pick_trials(opts, 10), seed, opts.solver);
        return std::pair(std::abs(est.lower_bound - 1.0),
                         !est.unbounded && std::abs(est.lower_bound - 1.0) <= 1e-4);
    }});

    cases.push_back({"gauge-norm/congruence-bound", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 3); ++it) {
            RectMatrix z(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
            double zn = op_norm(z);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) z.at(i, j) /= zn;
            auto phi = congruence_map(OperatorSpace::full(2), OperatorSpace::full(2), z);
            auto est = gauge_norm(phi, 2, 8, rng.next_u64(), opts.solver);
            worst = std::max(worst, est.lower_bound - 1.0);
        }
        return std::pair(worst, worst <= 1e-4);
    }});

    cases.push_back({"gauge-norm/composition-submultiplicative", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 3); ++it) {
            auto rand_cong = [&](int md, int mc) {
                RectMatrix z(md, mc);
                for (int i = 0; i < md; ++i)
                    for (int j = 0; j < mc; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
                return congruence_map(OperatorSpace::full(md), OperatorSpace::full(mc), z);
            };
            auto f = rand_cong(2, 2);
            auto g = rand_cong(2, 2);
            auto fg = compose(f, g);
            double nf = gauge_norm(f, 1, 8, rng.next_u64(), opts.solver).lower_bound;
            double ng = gauge_norm(g, 1, 8, rng.next_u64(), opts.solver).lower_bound;
            double nfg = gauge_norm(fg, 1, 8, rng.next_u64(), opts.solver).lower_bound;
            worst = std::max(worst, nfg - nf * ng);
        }
        return std::pair(worst, worst <= 1e-4);
    }});

    cases.push_back({"amplification/functorial", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto rand_cong = [&](int md, int mc) {
            RectMatrix z(md, mc);
            for (int i = 0; i < md; ++i)
                for (int j = 0; j < mc; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
            return congruence_map(OperatorSpace::full(md), OperatorSpace::full(mc), z);
        };
        auto f = rand_cong(2, 2);
        auto g = rand_cong(2, 2);
        auto fg = compose(f, g);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 4); ++it) {
            const MatrixLevel& lvl = g.domain.level(2);
            Rng r2(rng.next_u64());
            HermitianMatrix a = lvl.sample(r2);
            HermitianMatrix lhs = apply_level(fg, 2, a);
            HermitianMatrix rhs = apply_level(f, 2, apply_level(g, 2, a));
            worst = std::max(worst, (lhs - rhs).frobenius_norm());
        }
        // identity amplifies to identity
        auto idm = amplified_map(identity_map(Space{OperatorSpace::full(2)}), 2);
        for (std::size_t i = 0; i < idm.matrix.size(); ++i)
            for (std::size_t j = 0; j < idm.matrix[i].size(); ++j)
                worst = std::max(worst,
                                 std::abs(idm.matrix[i][j] - (i == j ? 1.0 : 0.0)));
        return std::pair(worst, worst <= 1e-8);
    }});

    cases.push_back({"extension-criterion/indefinite-gap", [&opts](std::uint64_t seed) {
        auto v = OperatorSpace::full(2);
        HermitianMatrix s(2, {Complex(-1), Complex(1), Complex(1), Complex(0)});
        auto rep = extension_condition(v, {s}, pick_trials(opts, 6), 1, seed, opts.solver);
        double slack = std::abs(rep.max_gap - 1.0);
        return std::pair(slack, slack <= 1e-3 && !rep.extension_friendly);
    }});

    cases.push_back({"extension-criterion/full-space-zero-gap", [&opts](std::uint64_t seed) {
        auto v = OperatorSpace::full(2);
        auto rep = extension_condition(v, v.basis(), pick_trials(opts, 6), 2, seed, opts.solver);
        return std::pair(std::abs(rep.max_gap),
                         rep.extension_friendly && std::abs(rep.max_gap) <= 2.0 * opts.solver.tol);
    }});

    cases.push_back({"hb-extension/matrix-vs-poly", [&opts](std::uint64_t seed) {
        // Diagonal subspace of Herm(2) == (R^2, sup, entrywise): the matrix
        // backend extension must agree with the exact polyhedral one.
        Rng rng(seed);
        auto v = OperatorSpace::diagonal(2);
        HermitianMatrix e1 = HermitianMatrix::diagonal({1.0, 0.0});
        double f = rng.uniform(0.0, 1.0); // f(e1) in [0, d(e1)] = [0,1]
        auto res = hb_extend_matrix(v, {e1}, {f}, pick_trials(opts, 12), rng.next_u64(),
                                    opts.solver);
        PolyCone cone(2, {{1, 0}, {0, 1}});
        auto pres = hb_extend(PolyNorm::sup(2), cone, {{1.0, 0.0}}, {f});
        bool ok = res.precondition_ok && res.extended && pres.extended &&
                  res.residual_worst <= 5e-4;
        return std::pair(res.residual_worst, ok);
    }});

    cases.push_back({"cpcc/maximal-gauge-converse", [&opts](std::uint64_t seed) {
        // Maps that pass the cpcc sampling on distance-gauge spaces show a
        // gauge-norm lower bound at most one.
        Rng rng(seed);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 3); ++it) {
            RectMatrix z(2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
            double zn = op_norm(z);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) z.at(i, j) /= zn;
            auto phi = congruence_map(OperatorSpace::full(2), OperatorSpace::full(2), z);
            auto cp = check_cpcc(phi, 2, 6, rng.next_u64(), opts.solver);
            if (cp.positivity_worst <= 1e-5 && cp.contraction_worst <= 1e-5) {
                auto est = gauge_norm(phi, 2, 8, rng.next_u64(), opts.solver);
                worst = std::max(worst, est.lower_bound - 1.0);
            }
        }
        return std::pair(worst, worst <= 1e-4);
    }});

    return cases;
}

// ---------------------------------------------------------------- quotients

std::vector<CaseSpec> quotient_cases(const VerifyOptions& opts) {
    std::vector<CaseSpec> cases;

    cases.push_back({"quotient/e11-closed-form", [&opts](std::uint64_t seed) {
        (void)seed;
        (void)opts;
        double worst = 0;
        for (int n = 1; n <= 1000; ++n) {
            double v = e11_sequence_value(n, Complex(1));
            double truth = (-double(n) + std::sqrt(double(n) * n + 4.0)) / 2.0;
            worst = std::max(worst, std::abs(v - truth));
        }
        return std::pair(worst, worst <= 1e-9);
    }});

    cases.push_back({"quotient/e11-monotone-phase-invariant", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        double worst = 0;
        bool monotone = true;
        double prev = e11_sequence_value(1, Complex(1));
        for (int n = 2; n <= pick_trials(opts, 200); ++n) {
            double v = e11_sequence_value(n, Complex(1));
            if (v >= prev) monotone = false;
            prev = v;
            double phase = rng.uniform(0.0, 6.283185307179586);
            double vp = e11_sequence_value(n, Complex(std::cos(phase), std::sin(phase)));
            worst = std::max(worst, std::abs(vp - v));
            worst = std::max(worst, std::max(0.0, v - 1.0 / double(n)));
        }
        return std::pair(worst, monotone && worst <= 1e-12);
    }});

    cases.push_back({"quotient/e11-not-an-ideal", [&opts](std::uint64_t seed) {
        auto herm2 = OperatorSpace::full(2);
        HermitianMatrix e11(2);
        e11.at(0, 0) = 1.0;
        auto verdict =
            is_gauge_ideal(herm2, IdealSpec{{e11}}, pick_trials(opts, 8), seed, opts.solver);
        double worst = std::max(verdict.certificate_q_pos, verdict.certificate_q_neg);
        return std::pair(worst, !verdict.ideal_witnessed && worst <= 1e-3);
    }});

    cases.push_back({"quotient/contractive-bound", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto herm2 = OperatorSpace::full(2);
        HermitianMatrix e11(2);
        e11.at(0, 0) = 1.0;
        IdealSpec s{{e11}};
        MatrixLevel l1(herm2, 1);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 10); ++it) {
            HermitianMatrix x = l1.sample(rng);
            double nu = order_gauge(l1, x, opts.solver).value;
            double q = quotient_gauge(herm2, s, 1, x, opts.solver).value;
            worst = std::max(worst, q - nu);
        }
        return std::pair(worst, worst <= opts.solver.tol);
    }});

    cases.push_back({"quotient/gauge-axioms-sampled", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto herm2 = OperatorSpace::full(2);
        HermitianMatrix e11(2);
        e11.at(0, 0) = 1.0;
        IdealSpec s{{e11}};
        MatrixLevel l1(herm2, 1);
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 6); ++it) {
            HermitianMatrix x = l1.sample(rng), y = l1.sample(rng);
            double qx = quotient_gauge(herm2, s, 1, x, opts.solver).value;
            double qy = quotient_gauge(herm2, s, 1, y, opts.solver).value;
            double qxy = quotient_gauge(herm2, s, 1, x + y, opts.solver).value;
            worst = std::max(worst, qxy - qx - qy);
            double t = rng.log_uniform(0.2, 5.0);
            double qtx = quotient_gauge(herm2, s, 1, x * t, opts.solver).value;
            worst = std::max(worst, std::abs(qtx - t * qx) / t);
        }
        return std::pair(worst, worst <= 3.0 * opts.solver.tol);
    }});

    cases.push_back({"quotient/trivial-coset", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto herm2 = OperatorSpace::full(2);
        HermitianMatrix e11(2);
        e11.at(0, 0) = 1.0;
        IdealSpec s{{e11}};
        double worst = 0;
        for (int it = 0; it < pick_trials(opts, 4); ++it) {
            HermitianMatrix x = e11 * rng.normal();
            worst = std::max(worst, quotient_gauge(herm2, s, 1, x, opts.solver).value);
        }
        return std::pair(worst, worst <= 10.0 * opts.solver.tol);
    }});

    cases.push_back({"quotient/amplified-consistency", [&opts](std::uint64_t seed) {
        Rng rng(seed);
        auto herm2 = OperatorSpace::full(2);
        HermitianMatrix e11(2);
        e11.at(0, 0) = 1.0;
        // non-ideal stays refuted at level 2 (certificate embeds)
        auto bad = amplified_ideal_check(herm2, IdealSpec{{e11}}, 2, pick_trials(opts, 5),
                                         rng.next_u64(), opts.solver);
        // an ideal inside the diagonal parent stays witnessed at level 2
        auto diag = OperatorSpace::diagonal(2);
        HermitianMatrix d1 = HermitianMatrix::diagonal({1.0, 0.0});
        auto good = amplified_ideal_check(diag, IdealSpec{{d1}}, 2, pick_trials(opts, 5),
                                          rng.next_u64(), opts.solver);
        bool ok = bad.consistent && !bad.level1.ideal_witnessed && !bad.leveln.ideal_witnessed &&
                  good.consistent && good.level1.ideal_witnessed && good.leveln.ideal_witnessed;
        return std::pair(ok ? 0.0 : 1.0, ok);
    }});

    return cases;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"section2", "mos-axioms", "unitization", "maps",
                                                   "quotients"};
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "section2") return run_cases(name, section2_cases(opts), opts);
    if (name == "mos-axioms") return run_cases(name, mos_cases(opts), opts);
    if (name == "unitization") return run_cases(name, unitization_cases(opts), opts);
    if (name == "maps") return run_cases(name, maps_cases(opts), opts);
    if (name == "quotients") return run_cases(name, quotient_cases(opts), opts);
    throw ValidationError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all(const VerifyOptions& opts) {
    std::vector<SuiteResult> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, opts));
    return out;
}

std::string suite_results_to_json(const std::vector<SuiteResult>& results) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json cases = nlohmann::ordered_json::array();
        for (const auto& c : r.cases) {
            cases.push_back({{"proposition_tag", c.proposition_tag},
                             {"status", c.pass ? "pass" : "fail"},
                             {"worst_slack", c.worst_slack},
                             {"seed", c.seed}});
        }
        root.push_back({{"suite_name", r.suite_name},
                        {"passed", r.all_passed()},
                        {"cases", std::move(cases)}});
    }
    return root.dump(2);
}

std::string suite_results_to_text(const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << "suite " << r.suite_name << (r.all_passed() ? "  [pass]" : "  [FAIL]") << "\n";
        for (const auto& c : r.cases) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "  %-48s %-5s slack %.3e  %8.1f ms\n",
                          c.proposition_tag.c_str(), c.pass ? "pass" : "FAIL", c.worst_slack,
                          c.runtime_ms);
            os << buf;
        }
    }
    return os.str();
}

} // namespace gaugekit
