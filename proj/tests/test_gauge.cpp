#include "test_helpers.hpp"

#include "gaugekit/spaces.hpp"

using namespace gaugekit;
using gktest::random_hermitian;

TEST_SUITE("gauge") {

TEST_CASE("scalar gauge values") {
    CHECK(scalar_u(3) == 3);
    CHECK(scalar_u(-2) == 0);
    CHECK(scalar_u(0) == 0);
}

TEST_CASE("conjugation") {
    Gauge u = u_gauge();
    CHECK(conjugate(u)({-2.0}) == 2.0);

    Gauge g = positive_part_gauge(2);
    Gauge cc = conjugate(conjugate(g));
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        Vec x = rng.normal_vector(4);
        CHECK(std::abs(g(x) - cc(x)) <= 1e-14);
    }
    // conjugate of the positive-part gauge at diag(1,-3)
    Vec coords = herm_to_coords(HermitianMatrix::diagonal({1, -3}));
    CHECK(conjugate(g)(coords) == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("induced norm") {
    Gauge u = u_gauge();
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        double x = rng.normal();
        CHECK(induced_norm(u, {x}) == doctest::Approx(std::abs(x)).epsilon(1e-14));
    }
    CHECK(induced_norm(u, {0.0}) == 0.0);

    // the order-unit gauge of Herm(2) (unit I) is the positive-part gauge:
    // induced norm at diag(2,-5) is max(2, 5) = 5
    Gauge g = positive_part_gauge(2);
    CHECK(induced_norm(g, herm_to_coords(HermitianMatrix::diagonal({2, -5}))) ==
          doctest::Approx(5).epsilon(1e-12));
}

TEST_CASE("cone membership") {
    Gauge u = u_gauge();
    CHECK(cone_member(u, {5.0}, 0.0));
    CHECK(!cone_member(u, {-1.0}, 0.0));
    CHECK_THROWS_AS(cone_member(u, {1.0}, -1.0), ValidationError);

    Gauge g = positive_part_gauge(2);
    HermitianMatrix ones(2, {Complex(1), Complex(1), Complex(1), Complex(1)});
    CHECK(cone_member(g, herm_to_coords(ones), 1e-12)); // PSD: eigenvalues 0, 2
    CHECK(!cone_member(g, herm_to_coords(HermitianMatrix::diagonal({1, -0.5})), 1e-12));
}

TEST_CASE("axiom sampler on exact and degenerate gauges") {
    auto rep = check_gauge_axioms(u_gauge(), 7, 200);
    CHECK(rep.subadditivity_worst <= 1e-12);
    CHECK(rep.homogeneity_worst <= 1e-9); // pure rounding of the slack evaluation
    CHECK(rep.properness_witnessed);

    Gauge zero(1, GaugeKind::closed_form, [](const Vec&) { return 0.0; });
    auto zrep = check_gauge_axioms(zero, 7, 50);
    CHECK(!zrep.properness_witnessed);
    CHECK(!zrep.failures.empty());

    CHECK_THROWS_AS(check_gauge_axioms(u_gauge(), 7, 0), ValidationError);
}

TEST_CASE("solver-backed distance gauge passes the sampler within budget") {
    Rng rng(11);
    std::vector<HermitianMatrix> sub;
    auto full = herm_basis(3);
    for (int k = 0; k < 2; ++k) {
        HermitianMatrix m(3);
        for (const auto& b : full) m.add_scaled(rng.normal(), b);
        sub.push_back(std::move(m));
    }
    OperatorSpace v(3, sub);
    MatrixLevel l1(v, 1);
    SolverConfig cfg;
    Gauge d(v.dim_sa(), GaugeKind::solver_backed, [&](const Vec& c) {
        return order_gauge(l1, l1.realize(c), cfg).value;
    });
    auto rep = check_gauge_axioms(d, 13, 200);
    CHECK(rep.subadditivity_worst <= 2e-4);
    CHECK(rep.properness_witnessed);
}

TEST_CASE("order-unit gauge against the operator norm on the full space") {
    // g(x) + g(-x) >= |x|_op >= max(g(x), g(-x)) on random samples
    Gauge g = positive_part_gauge(3);
    Rng rng(17);
    for (int t = 0; t < 25; ++t) {
        HermitianMatrix a = random_hermitian(3, rng);
        Vec c = herm_to_coords(a);
        Vec nc(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) nc[i] = -c[i];
        double gx = g(c), gnx = g(nc), nrm = op_norm(a);
        CHECK(gx + gnx >= nrm - 1e-9);
        CHECK(nrm >= std::max(gx, gnx) - 1e-9);
    }
}

TEST_CASE("properness witnesses imply the zero element on samples") {
    Gauge g = positive_part_gauge(2);
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        Vec x = rng.normal_vector(4);
        Vec nx(4);
        for (int i = 0; i < 4; ++i) nx[std::size_t(i)] = -x[std::size_t(i)];
        bool both = cone_member(g, x, 0.0) && cone_member(g, nx, 0.0);
        double norm2 = 0;
        for (double xi : x) norm2 += xi * xi;
        if (both) CHECK(norm2 <= 1e-18);
    }
}

} // TEST_SUITE
