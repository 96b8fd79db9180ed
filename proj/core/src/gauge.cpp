#include "gaugekit/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "gaugekit/rng.hpp"

namespace gaugekit {

double scalar_u(double t) { return std::max(0.0, t); }

Gauge conjugate(const Gauge& g) {
    return Gauge(g.space_dim(), g.kind(), [g](const Vec& x) {
        Vec neg(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
        return g(neg);
    });
}

double induced_norm(const Gauge& g, const Vec& x) {
    Vec neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    return std::max(g(x), g(neg));
}

bool cone_member(const Gauge& g, const Vec& x, double tol) {
    if (tol < 0) throw ValidationError("cone_member: tol must be nonnegative");
    Vec neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    return g(neg) <= tol;
}

GaugeAxiomReport check_gauge_axioms(const Gauge& g, std::uint64_t sampler_seed, int trials) {
    if (trials < 1) throw ValidationError("check_gauge_axioms: trials must be >= 1");
    Rng rng(sampler_seed);
    const int d = g.space_dim();
    GaugeAxiomReport rep;
    rep.trials = trials;
    for (int it = 0; it < trials; ++it) {
        Vec x = rng.normal_vector(std::size_t(d));
        Vec y = rng.normal_vector(std::size_t(d));
        double t = rng.log_uniform(1e-3, 1e3);

        const std::size_t dd = std::size_t(d);
        Vec xy(dd), tx(dd), nx(dd);
        double xnorm = 0.0;
        for (int i = 0; i < d; ++i) {
            xy[std::size_t(i)] = x[std::size_t(i)] + y[std::size_t(i)];
            tx[std::size_t(i)] = t * x[std::size_t(i)];
            nx[std::size_t(i)] = -x[std::size_t(i)];
            xnorm += x[std::size_t(i)] * x[std::size_t(i)];
        }
        xnorm = std::sqrt(xnorm);

        double gx = g(x), gy = g(y), gxy = g(xy), gtx = g(tx), gnx = g(nx);
        rep.subadditivity_worst = std::max(rep.subadditivity_worst, gxy - gx - gy);
        rep.homogeneity_worst = std::max(rep.homogeneity_worst, std::abs(gtx - t * gx));
        double eps = 1e-9 * (1.0 + xnorm);
        if (xnorm > 1e-9 && gx <= eps && gnx <= eps) {
            rep.properness_witnessed = false;
            rep.failures.push_back(x);
        }
    }
    rep.subadditivity_worst = std::max(rep.subadditivity_worst, 0.0);
    return rep;
}

Gauge u_gauge() {
    return Gauge(1, GaugeKind::closed_form, [](const Vec& x) { return scalar_u(x[0]); });
}

std::vector<HermitianMatrix> herm_basis(int m) {
    std::vector<HermitianMatrix> basis;
    basis.reserve(std::size_t(m) * m);
    for (int i = 0; i < m; ++i) {
        HermitianMatrix e(m);
        e.at(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            HermitianMatrix re(m);
            re.at(i, j) = s;
            re.at(j, i) = s;
            basis.push_back(std::move(re));
            HermitianMatrix im(m);
            im.at(i, j) = Complex(0, s);
            im.at(j, i) = Complex(0, -s);
            basis.push_back(std::move(im));
        }
    return basis;
}

HermitianMatrix coords_to_herm(int m, const Vec& coords) {
    auto basis = herm_basis(m);
    if (coords.size() != basis.size())
        throw ValidationError("coords_to_herm: expected " + std::to_string(basis.size()) +
                              " coordinates");
    HermitianMatrix a(m);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (coords[k] != 0.0) a = a + basis[k] * coords[k];
    return a;
}

Vec herm_to_coords(const HermitianMatrix& a) {
    auto basis = herm_basis(a.dim());
    Vec coords(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) coords[k] = trace_inner(basis[k], a);
    return coords;
}

Gauge positive_part_gauge(int m) {
    return Gauge(m * m, GaugeKind::closed_form, [m](const Vec& coords) {
        auto a = coords_to_herm(m, coords);
        auto d = eig_hermitian(a);
        return std::max(d.lambda_max(), 0.0);
    });
}

} // namespace gaugekit
