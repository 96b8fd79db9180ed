#include "gaugekit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaugekit/rng.hpp"

namespace gaugekit {

namespace {

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

void check_vector(const Vec& v, int d, const char* what) {
    if (int(v.size()) != d)
        throw ValidationError(std::string(what) + ": expected dimension " + std::to_string(d) +
                              ", got " + std::to_string(v.size()));
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite entry");
}

} // namespace

PolyCone::PolyCone(int d, std::vector<Vec> gens, std::vector<Vec> planes)
    : dim(d), generators(std::move(gens)), halfspaces(std::move(planes)) {
    if (d <= 0) throw ValidationError("PolyCone: dimension must be positive");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        check_vector(generators[i], d, "PolyCone generator");
        if (norm2(generators[i]) <= 1e-14)
            throw ValidationError("PolyCone: generator " + std::to_string(i) + " is zero");
    }
    for (const auto& h : halfspaces) check_vector(h, d, "PolyCone halfspace");
    if (!halfspaces.empty()) {
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = 0; j < halfspaces.size(); ++j)
                if (dot(halfspaces[j], generators[i]) < -1e-9 * norm2(generators[i]))
                    throw ValidationError("PolyCone: generator " + std::to_string(i) +
                                          " violates halfspace " + std::to_string(j));
    }
}

bool PolyCone::is_proper() const {
    if (generators.empty()) return true;
    // Improper iff some nonzero nonnegative combination of generators
    // vanishes. Box the coefficients so the LP stays bounded.
    LPProblem p;
    p.maximize = true;
    for (std::size_t i = 0; i < generators.size(); ++i) p.add_var(0.0, 1.0, 1.0);
    for (int k = 0; k < dim; ++k) {
        Vec row(generators.size());
        for (std::size_t i = 0; i < generators.size(); ++i) row[i] = generators[i][std::size_t(k)];
        p.add_row(std::move(row), RowSense::eq, 0.0);
    }
    auto sol = lp_solve(p);
    return sol.status == LPStatus::optimal && sol.objective <= 1e-7;
}

bool PolyCone::contains(const Vec& x, double tol) const {
    check_vector(x, dim, "PolyCone::contains argument");
    if (generators.empty()) return norm2(x) <= tol;
    LPProblem p;
    for (std::size_t i = 0; i < generators.size(); ++i) p.add_var(0.0, kInf, 0.0);
    // Slack pair per coordinate turns "Ga = x" into a least-infeasibility
    // check: membership iff the optimal slack mass is below tol.
    int sp = p.add_var(0.0, kInf, 1.0);
    (void)sp;
    for (int k = 0; k < dim; ++k) {
        Vec row(std::size_t(p.num_vars), 0.0);
        for (std::size_t i = 0; i < generators.size(); ++i) row[i] = generators[i][std::size_t(k)];
        // |sum_i a_i g_i[k] - x[k]| <= s
        Vec up = row, dn = row;
        up[std::size_t(p.num_vars) - 1] = -1.0;
        dn[std::size_t(p.num_vars) - 1] = 1.0;
        p.add_row(std::move(up), RowSense::le, x[std::size_t(k)]);
        p.add_row(std::move(dn), RowSense::ge, x[std::size_t(k)]);
    }
    auto sol = lp_solve(p);
    return sol.status == LPStatus::optimal && sol.objective <= tol;
}

PolyNorm PolyNorm::sup(int d) {
    if (d <= 0) throw ValidationError("PolyNorm: dimension must be positive");
    PolyNorm n;
    n.dim = d;
    n.kind = Kind::sup;
    return n;
}

PolyNorm PolyNorm::polytope(int d, std::vector<Vec> verts) {
    if (d <= 0) throw ValidationError("PolyNorm: dimension must be positive");
    if (d > 6) throw ValidationError("PolyNorm: polytope norms limited to dimension 6");
    if (verts.empty()) throw ValidationError("PolyNorm: vertex list is empty");
    PolyNorm n;
    n.dim = d;
    n.kind = Kind::polytope;
    n.vertices = std::move(verts);
    for (const auto& v : n.vertices) check_vector(v, d, "PolyNorm vertex");
    // The unit ball must be symmetric: every vertex needs its negation.
    for (std::size_t i = 0; i < n.vertices.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < n.vertices.size() && !found; ++j) {
            double diff = 0;
            for (int k = 0; k < d; ++k)
                diff = std::max(diff, std::abs(n.vertices[i][std::size_t(k)] +
                                               n.vertices[j][std::size_t(k)]));
            found = diff <= 1e-9;
        }
        if (!found)
            throw ValidationError("PolyNorm: vertex " + std::to_string(i) +
                                  " has no negation; unit ball not symmetric");
    }
    // Nonempty interior: vertices must span R^d.
    std::vector<double> gram(std::size_t(d) * d, 0.0);
    for (const auto& v : n.vertices)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                gram[std::size_t(i) * d + j] += v[std::size_t(i)] * v[std::size_t(j)];
    std::vector<Complex> ge(gram.begin(), gram.end());
    auto eig = eig_hermitian(HermitianMatrix::from_raw(d, ge));
    if (eig.lambda_min() <= 1e-10 * std::max(1.0, eig.lambda_max()))
        throw ValidationError("PolyNorm: unit ball has empty interior (vertices do not span)");
    return n;
}

double PolyNorm::value(const Vec& x) const {
    check_vector(x, dim, "PolyNorm::value argument");
    if (kind == Kind::sup) {
        double m = 0;
        for (double xi : x) m = std::max(m, std::abs(xi));
        return m;
    }
    LPProblem p;
    for (std::size_t j = 0; j < vertices.size(); ++j) p.add_var(0.0, kInf, 1.0);
    for (int k = 0; k < dim; ++k) {
        Vec row(vertices.size());
        for (std::size_t j = 0; j < vertices.size(); ++j) row[j] = vertices[j][std::size_t(k)];
        p.add_row(std::move(row), RowSense::eq, x[std::size_t(k)]);
    }
    auto sol = lp_solve(p);
    if (sol.status != LPStatus::optimal)
        throw Error("PolyNorm::value: representation LP unsolvable (ball invalid?)");
    return sol.objective;
}

namespace {

// Shared LP core for d and its quotient variant:
//   min ||x + C m + G a||  over  m free, a >= 0.
double d_gauge_lp(const PolyNorm& norm, const PolyCone& cone, const std::vector<Vec>& coset,
                  const Vec& x) {
    check_vector(x, norm.dim, "d_gauge argument");
    if (cone.dim != norm.dim) throw ValidationError("d_gauge: cone and norm dimensions differ");
    const int d = norm.dim;
    const std::size_t ng = cone.generators.size(), nc = coset.size();
    LPProblem p;
    for (std::size_t i = 0; i < ng; ++i) p.add_var(0.0, kInf, 0.0);
    for (std::size_t l = 0; l < nc; ++l) p.add_var(-kInf, kInf, 0.0);

    auto lhs_row = [&](int k, double extra_cols) {
        Vec row(std::size_t(p.num_vars), 0.0);
        for (std::size_t i = 0; i < ng; ++i) row[i] = cone.generators[i][std::size_t(k)];
        for (std::size_t l = 0; l < nc; ++l) row[ng + l] = coset[l][std::size_t(k)];
        (void)extra_cols;
        return row;
    };

    if (norm.kind == PolyNorm::Kind::sup) {
        int t = p.add_var(0.0, kInf, 1.0);
        for (int k = 0; k < d; ++k) {
            Vec up = lhs_row(k, 0);
            up.resize(std::size_t(p.num_vars), 0.0);
            Vec dn = up;
            up[std::size_t(t)] = -1.0;
            dn[std::size_t(t)] = 1.0;
            // x_k + (Ga + Cm)_k <= t  and  >= -t
            p.add_row(std::move(up), RowSense::le, -x[std::size_t(k)]);
            p.add_row(std::move(dn), RowSense::ge, -x[std::size_t(k)]);
        }
    } else {
        // x + Cm + Ga = V lambda, minimize sum lambda.
        const std::size_t nv = norm.vertices.size();
        for (std::size_t j = 0; j < nv; ++j) p.add_var(0.0, kInf, 1.0);
        for (int k = 0; k < d; ++k) {
            Vec row = lhs_row(k, 0);
            row.resize(std::size_t(p.num_vars), 0.0);
            for (std::size_t j = 0; j < nv; ++j)
                row[ng + nc + j] = -norm.vertices[j][std::size_t(k)];
            p.add_row(std::move(row), RowSense::eq, -x[std::size_t(k)]);
        }
    }
    auto sol = lp_solve(p);
    if (sol.status != LPStatus::optimal)
        throw Error("d_gauge: LP did not reach optimality (status " +
                    std::to_string(int(sol.status)) + ")");
    return std::max(sol.objective, 0.0);
}

} // namespace

double d_gauge_exact(const PolyNorm& norm, const PolyCone& cone, const Vec& x) {
    return d_gauge_lp(norm, cone, {}, x);
}

double d_gauge_quotient_exact(const PolyNorm& norm, const PolyCone& cone,
                              const std::vector<Vec>& coset_basis, const Vec& x) {
    for (const auto& s : coset_basis) check_vector(s, norm.dim, "coset basis vector");
    return d_gauge_lp(norm, cone, coset_basis, x);
}

NormalityReport check_normal_exact(const PolyNorm& norm, const PolyCone& cone, int trials,
                                   std::uint64_t seed) {
    if (cone.dim != norm.dim) throw ValidationError("check_normal_exact: dimension mismatch");
    Rng rng(seed);
    NormalityReport rep;
    rep.trials = trials;
    const int d = norm.dim;
    for (int it = 0; it < trials; ++it) {
        Vec y = rng.normal_vector(std::size_t(d));
        Vec x = y, z = y;
        for (const auto& g : cone.generators) {
            double u = rng.uniform01(), w = rng.uniform01();
            for (int k = 0; k < d; ++k) {
                x[std::size_t(k)] -= u * g[std::size_t(k)];
                z[std::size_t(k)] += w * g[std::size_t(k)];
            }
        }
        double ny = norm.value(y), nx = norm.value(x), nz = norm.value(z);
        double viol = ny - std::max(nx, nz);
        if (viol > rep.worst_violation) {
            // Re-verify by direct evaluation before reporting.
            double v2 = norm.value(y) - std::max(norm.value(x), norm.value(z));
            if (v2 > 1e-12) {
                rep.worst_violation = v2;
                rep.witnesses.push_back({x, y, z});
            }
        }
    }
    return rep;
}

namespace {

// Adds the constraints of the contractive-functional polytope
// { f : f(v) <= 1 on ball vertices, f(g) >= 0 on generators } for variables
// f_0..f_{d-1} already present in p (plus epigraph vars for the sup norm).
void add_contractive_constraints(LPProblem& p, const PolyNorm& norm, const PolyCone& cone) {
    const int d = norm.dim;
    if (norm.kind == PolyNorm::Kind::sup) {
        // f(y) <= ||y||_sup for all y  <=>  sum |f_i| <= 1.
        std::vector<int> s;
        for (int i = 0; i < d; ++i) s.push_back(p.add_var(0.0, kInf, 0.0));
        for (int i = 0; i < d; ++i) {
            Vec up(std::size_t(p.num_vars), 0.0), dn(std::size_t(p.num_vars), 0.0);
            up[std::size_t(i)] = 1.0;
            up[std::size_t(s[std::size_t(i)])] = -1.0;
            dn[std::size_t(i)] = -1.0;
            dn[std::size_t(s[std::size_t(i)])] = -1.0;
            p.add_row(std::move(up), RowSense::le, 0.0);
            p.add_row(std::move(dn), RowSense::le, 0.0);
        }
        Vec sum(std::size_t(p.num_vars), 0.0);
        for (int i = 0; i < d; ++i) sum[std::size_t(s[std::size_t(i)])] = 1.0;
        p.add_row(std::move(sum), RowSense::le, 1.0);
    } else {
        for (const auto& v : norm.vertices) {
            Vec row(std::size_t(p.num_vars), 0.0);
            for (int i = 0; i < d; ++i) row[std::size_t(i)] = v[std::size_t(i)];
            p.add_row(std::move(row), RowSense::le, 1.0);
        }
    }
    for (const auto& g : cone.generators) {
        Vec row(std::size_t(p.num_vars), 0.0);
        for (int i = 0; i < d; ++i) row[std::size_t(i)] = g[std::size_t(i)];
        p.add_row(std::move(row), RowSense::ge, 0.0);
    }
}

} // namespace

std::pair<double, double> functional_range(const PolyNorm& norm, const PolyCone& cone, const Vec& x) {
    check_vector(x, norm.dim, "functional_range argument");
    const int d = norm.dim;
    double endpoints[2];
    for (int pass = 0; pass < 2; ++pass) {
        LPProblem p;
        p.maximize = (pass == 0);
        for (int i = 0; i < d; ++i) p.add_var(-kInf, kInf, x[std::size_t(i)]);
        add_contractive_constraints(p, norm, cone);
        auto sol = lp_solve(p);
        if (sol.status != LPStatus::optimal)
            throw Error("functional_range: LP not optimal");
        endpoints[pass] = sol.objective;
    }
    double hi = endpoints[0], lo = endpoints[1];
    Vec nx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) nx[i] = -x[i];
    double dx = d_gauge_exact(norm, cone, x), dnx = d_gauge_exact(norm, cone, nx);
    if (std::abs(hi - dx) > 1e-8 || std::abs(lo + dnx) > 1e-8)
        throw Error("functional_range: duality mismatch, sup=" + std::to_string(hi) + " vs d=" +
                    std::to_string(dx) + ", inf=" + std::to_string(lo) + " vs -d(-x)=" +
                    std::to_string(-dnx));
    return {lo, hi};
}

HbExtendResult hb_extend(const PolyNorm& norm, const PolyCone& cone,
                         const std::vector<Vec>& subspace_basis, const Vec& f_on_subspace) {
    const int d = norm.dim;
    if (subspace_basis.size() != f_on_subspace.size())
        throw ValidationError("hb_extend: one value per subspace basis vector required");
    for (const auto& s : subspace_basis) check_vector(s, d, "hb_extend subspace basis vector");
    HbExtendResult out;

    // Precondition: f(s) <= d(s) for every s in the subspace. Equivalent to
    // sup { f(s) : s in S, d(s) <= 1 } <= 1; the coefficients are boxed so a
    // recession direction with f > 0 still shows up as a large witness.
    {
        const double box = 1e6;
        const std::size_t k = subspace_basis.size();
        LPProblem p;
        p.maximize = true;
        for (std::size_t i = 0; i < k; ++i) p.add_var(-box, box, f_on_subspace[i]);
        const std::size_t ng = cone.generators.size();
        for (std::size_t i = 0; i < ng; ++i) p.add_var(0.0, kInf, 0.0);
        auto lhs = [&](int kk) {
            Vec row(std::size_t(p.num_vars), 0.0);
            for (std::size_t i = 0; i < k; ++i) row[i] = subspace_basis[i][std::size_t(kk)];
            for (std::size_t i = 0; i < ng; ++i) row[k + i] = cone.generators[i][std::size_t(kk)];
            return row;
        };
        if (norm.kind == PolyNorm::Kind::sup) {
            for (int kk = 0; kk < d; ++kk) {
                Vec row = lhs(kk);
                p.add_row(row, RowSense::le, 1.0);
                for (auto& r : row) r = -r;
                p.add_row(std::move(row), RowSense::le, 1.0);
            }
        } else {
            const std::size_t nv = norm.vertices.size();
            for (std::size_t j = 0; j < nv; ++j) p.add_var(0.0, kInf, 0.0);
            Vec cap(std::size_t(p.num_vars), 0.0);
            for (std::size_t j = 0; j < nv; ++j) cap[k + ng + j] = 1.0;
            p.add_row(std::move(cap), RowSense::le, 1.0);
            for (int kk = 0; kk < d; ++kk) {
                Vec row = lhs(kk);
                row.resize(std::size_t(p.num_vars), 0.0);
                for (std::size_t j = 0; j < nv; ++j) row[k + ng + j] = -norm.vertices[j][std::size_t(kk)];
                p.add_row(std::move(row), RowSense::eq, 0.0);
            }
        }
        auto sol = lp_solve(p);
        if (sol.status == LPStatus::optimal && sol.objective > 1.0 + 1e-7) {
            out.precondition_ok = false;
            Vec witness(std::size_t(d), 0.0);
            for (std::size_t i = 0; i < subspace_basis.size(); ++i)
                for (int kk = 0; kk < d; ++kk)
                    witness[std::size_t(kk)] += sol.x[i] * subspace_basis[i][std::size_t(kk)];
            out.violation_witness = std::move(witness);
            return out;
        }
    }

    // Extension: find g with g|_S = f inside the contractive polytope.
    {
        LPProblem p;
        for (int i = 0; i < d; ++i) p.add_var(-1e6, 1e6, 0.0);
        add_contractive_constraints(p, norm, cone);
        for (std::size_t i = 0; i < subspace_basis.size(); ++i) {
            Vec row(std::size_t(p.num_vars), 0.0);
            for (int kk = 0; kk < d; ++kk) row[std::size_t(kk)] = subspace_basis[i][std::size_t(kk)];
            p.add_row(std::move(row), RowSense::eq, f_on_subspace[i]);
        }
        auto sol = lp_solve(p);
        if (sol.status == LPStatus::optimal) {
            out.extended = true;
            out.functional.assign(sol.x.begin(), sol.x.begin() + d);
        }
    }
    return out;
}

} // namespace gaugekit
