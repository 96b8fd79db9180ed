#include "test_helpers.hpp"

#include "gaugekit/poly.hpp"
#include "gaugekit/solver.hpp"

using namespace gaugekit;
using gktest::random_hermitian;
using gktest::random_rect;

TEST_SUITE("solver") {

TEST_CASE("full-space cone distances match the eigenvalue closed form") {
    Rng rng(101);
    SolverConfig cfg;
    for (int m : {2, 3}) {
        auto basis = herm_basis(m);
        for (int t = 0; t < 8; ++t) {
            HermitianMatrix a = random_hermitian(m, rng);
            auto rep = min_opnorm_over_cone({a, basis, {}}, cfg);
            double truth = std::max(eig_hermitian(a).lambda_max(), 0.0);
            CHECK(rep.converged);
            CHECK(std::abs(rep.value - truth) <= 1e-4);
            CHECK(rep.infeasibility <= cfg.tol);
        }
    }
}

TEST_CASE("diagonal problems match the LP oracle") {
    Rng rng(103);
    SolverConfig cfg;
    std::vector<HermitianMatrix> diagbasis;
    for (int i = 0; i < 3; ++i) {
        Vec e(3, 0.0);
        e[std::size_t(i)] = 1.0;
        diagbasis.push_back(HermitianMatrix::diagonal(e));
    }
    PolyCone cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    PolyNorm nsup = PolyNorm::sup(3);
    for (int t = 0; t < 8; ++t) {
        Vec dv = rng.normal_vector(3);
        auto rep = min_opnorm_over_cone({HermitianMatrix::diagonal(dv), diagbasis, {}}, cfg);
        CHECK(std::abs(rep.value - d_gauge_exact(nsup, cone, dv)) <= 2e-4);
    }
}

TEST_CASE("a target inside the negative cone solves to zero") {
    SolverConfig cfg;
    // cone basis contains a PSD element P0; target A = -P0
    HermitianMatrix p0(2, {Complex(2), Complex(1), Complex(1), Complex(1)}); // eigs > 0
    HermitianMatrix other(2, {Complex(0), Complex(0, 1), Complex(0, -1), Complex(0)});
    auto rep = min_opnorm_over_cone({-p0, {p0, other}, {}}, cfg);
    CHECK(rep.value <= 10 * cfg.tol);
}

TEST_CASE("subgradient closed forms and finite differences") {
    HermitianMatrix e11(2);
    e11.at(0, 0) = 1.0;
    Vec g1 = opnorm_subgradient(HermitianMatrix::diagonal({2, -1}), {e11});
    CHECK(g1[0] == doctest::Approx(1).epsilon(1e-12));
    Vec g2 = opnorm_subgradient(HermitianMatrix::diagonal({-3, 1}), {e11});
    CHECK(g2[0] == doctest::Approx(-1).epsilon(1e-12));

    Rng rng(107);
    auto basis = herm_basis(3);
    for (int t = 0; t < 4; ++t) {
        HermitianMatrix m = random_hermitian(3, rng);
        // skip degenerate points where the dominant pair is nearly tied
        auto eig = eig_hermitian(m);
        if (std::abs(std::abs(eig.lambda_max()) - std::abs(eig.lambda_min())) < 1e-3) continue;
        Vec g = opnorm_subgradient(m, basis);
        const double h = 1e-6;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            double fd = (op_norm(m + basis[i] * h) - op_norm(m + basis[i] * (-h))) / (2 * h);
            CHECK(std::abs(fd - g[i]) <= 1e-4);
        }
    }
}

TEST_CASE("monotonicity under cone enlargement") {
    Rng rng(109);
    SolverConfig cfg;
    auto full = herm_basis(3);
    for (int t = 0; t < 4; ++t) {
        std::vector<HermitianMatrix> small, big;
        for (int k = 0; k < 2; ++k) {
            HermitianMatrix m(3);
            for (const auto& b : full) m.add_scaled(rng.normal(), b);
            small.push_back(m);
            big.push_back(std::move(m));
        }
        {
            HermitianMatrix extra(3);
            for (const auto& b : full) extra.add_scaled(rng.normal(), b);
            big.push_back(std::move(extra));
        }
        HermitianMatrix a(3);
        for (const auto& b : full) a.add_scaled(rng.normal(), b);
        double vs = min_opnorm_over_cone({a, small, {}}, cfg).value;
        double vb = min_opnorm_over_cone({a, big, {}}, cfg).value;
        CHECK(vb <= vs + cfg.tol);
    }
}

TEST_CASE("computed values behave like a gauge") {
    Rng rng(113);
    SolverConfig cfg;
    auto full = herm_basis(3);
    std::vector<HermitianMatrix> sub;
    for (int k = 0; k < 3; ++k) {
        HermitianMatrix m(3);
        for (const auto& b : full) m.add_scaled(rng.normal(), b);
        sub.push_back(std::move(m));
    }
    for (int t = 0; t < 3; ++t) {
        Vec ca = rng.normal_vector(3), cb = rng.normal_vector(3);
        HermitianMatrix a(3), b(3);
        for (int k = 0; k < 3; ++k) {
            a.add_scaled(ca[std::size_t(k)], sub[std::size_t(k)]);
            b.add_scaled(cb[std::size_t(k)], sub[std::size_t(k)]);
        }
        double va = min_opnorm_over_cone({a, sub, {}}, cfg).value;
        double vb = min_opnorm_over_cone({b, sub, {}}, cfg).value;
        double vab = min_opnorm_over_cone({a + b, sub, {}}, cfg).value;
        CHECK(vab <= va + vb + 3 * cfg.tol);
        for (double tt : {0.1, 2.0, 10.0}) {
            double vt = min_opnorm_over_cone({a * tt, sub, {}}, cfg).value;
            CHECK(std::abs(vt - tt * va) <= tt * 3 * cfg.tol);
        }
    }
}

TEST_CASE("certification accepts honest values and oracle instances") {
    Rng rng(127);
    SolverConfig cfg;
    auto basis = herm_basis(2);
    HermitianMatrix a = random_hermitian(2, rng);
    double truth = std::max(eig_hermitian(a).lambda_max(), 0.0);
    CHECK(certify_value({a, basis, {}}, truth, 10, 5, cfg));

    // claimed zero for a target inside the negative cone
    HermitianMatrix p0(2, {Complex(2), Complex(1), Complex(1), Complex(1)});
    CHECK(certify_value({-p0, {p0}, {}}, 0.0, 10, 5, cfg));

    // a badly understated claim is rejected
    bool understated_rejected =
        !certify_value({a, basis, {}}, std::max(truth - 0.5, 0.0), 10, 5, cfg) || truth < 0.5;
    CHECK(understated_rejected);
    CHECK_THROWS_AS(certify_value({a, basis, {}}, -1.0, 5, 5, cfg), ValidationError);
}

TEST_CASE("problem validation") {
    HermitianMatrix a(2);
    HermitianMatrix b(2);
    b.at(0, 0) = 1.0;
    ConeDistanceProblem dep{a, {b, b * 2.0}, {}};
    CHECK_THROWS_AS(dep.validate(), ValidationError);
    ConeDistanceProblem mismatched{a, {HermitianMatrix::identity(3)}, {}};
    CHECK_THROWS_AS(mismatched.validate(), ValidationError);
    SolverConfig bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(min_opnorm_over_cone({a, {b}, {}}, bad), ValidationError);
}

TEST_CASE("non-convergence is reported, never silent") {
    Rng rng(131);
    SolverConfig cfg;
    cfg.max_iter = 5; // starve the solver
    HermitianMatrix a = random_hermitian(3, rng);
    auto rep = min_opnorm_over_cone({a, herm_basis(3), {}}, cfg);
    CHECK(!rep.converged);
    CHECK(rep.iterations <= 5);
    CHECK(!rep.value_history_tail.empty());
}

} // TEST_SUITE
