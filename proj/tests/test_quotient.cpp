#include "test_helpers.hpp"

#include "gaugekit/quotient.hpp"

using namespace gaugekit;
using gktest::random_hermitian;

namespace {

HermitianMatrix e11_matrix() {
    HermitianMatrix e(2);
    e.at(0, 0) = 1.0;
    return e;
}

} // namespace

TEST_SUITE("quotient") {

TEST_CASE("coset of zero and trivial ideals") {
    SolverConfig cfg;
    auto herm2 = OperatorSpace::full(2);
    IdealSpec s{{e11_matrix()}};
    Rng rng(3);
    for (int t = 0; t < 4; ++t) {
        HermitianMatrix x = e11_matrix() * rng.normal();
        CHECK(quotient_gauge(herm2, s, 1, x, cfg).value <= 10 * cfg.tol);
    }
    auto v0 = is_gauge_ideal(herm2, IdealSpec{}, 5, 7, cfg);
    CHECK(v0.ideal_witnessed);
}

TEST_CASE("the matrix-unit span is refuted with a certificate") {
    SolverConfig cfg;
    auto herm2 = OperatorSpace::full(2);
    IdealSpec s{{e11_matrix()}};

    HermitianMatrix off(2);
    off.at(0, 1) = 1.0;
    off.at(1, 0) = 1.0;
    auto q = quotient_gauge(herm2, s, 1, off, cfg);
    CHECK(q.value <= 1e-3);
    CHECK(q.exact_parent_gauge);
    CHECK(std::abs(q.minimizing_coset_coeffs[0]) > 1e2); // the escape is unbounded

    auto verdict = is_gauge_ideal(herm2, s, 8, 7, cfg);
    CHECK(!verdict.ideal_witnessed);
    REQUIRE(verdict.certificate.has_value());
    CHECK(verdict.certificate_q_pos <= 1e-3);
    CHECK(verdict.certificate_q_neg <= 1e-3);
    // the certificate is essentially the off-diagonal direction
    const auto& c = *verdict.certificate;
    CHECK(std::abs(c.at(0, 0)) <= 1e-6);
    CHECK(std::abs(c.at(1, 1)) <= 1e-6);
    CHECK(std::abs(c.at(0, 1)) > 0.5);
}

TEST_CASE("one-sided quotients witness ideals") {
    SolverConfig cfg;
    // diagonal parent: span{E11} is an ideal there
    auto diag = OperatorSpace::diagonal(2);
    IdealSpec s{{HermitianMatrix::diagonal({1.0, 0.0})}};
    auto verdict = is_gauge_ideal(diag, s, 8, 7, cfg);
    CHECK(verdict.ideal_witnessed);
    // the quotient takes the expected exact values on the second coordinate
    for (double a : {-1.0, 0.5, 2.0}) {
        auto q = quotient_gauge(diag, s, 1, HermitianMatrix::diagonal({0.0, a}), cfg);
        CHECK(std::abs(q.value - std::max(a, 0.0)) <= 1e-3);
    }
}

TEST_CASE("amplified ideal checks stay consistent") {
    SolverConfig cfg;
    auto herm2 = OperatorSpace::full(2);
    auto bad = amplified_ideal_check(herm2, IdealSpec{{e11_matrix()}}, 2, 5, 7, cfg);
    CHECK(!bad.level1.ideal_witnessed);
    CHECK(!bad.leveln.ideal_witnessed);
    CHECK(bad.consistent);

    auto diag = OperatorSpace::diagonal(2);
    auto good = amplified_ideal_check(diag, IdealSpec{{HermitianMatrix::diagonal({1.0, 0.0})}}, 2,
                                      5, 7, cfg);
    CHECK(good.level1.ideal_witnessed);
    CHECK(good.leveln.ideal_witnessed);
    CHECK(good.consistent);
}

TEST_CASE("sequence values against the closed form") {
    CHECK(e11_sequence_value(1, Complex(1)) ==
          doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
    CHECK(e11_sequence_value(10, Complex(0, 1)) == doctest::Approx(0.0990195136).epsilon(1e-9));
    double worst = 0, prev = 1e9;
    Rng rng(5);
    for (int n = 1; n <= 1000; ++n) {
        double v = e11_sequence_value(n, Complex(1));
        double truth = (-double(n) + std::sqrt(double(n) * n + 4.0)) / 2.0;
        worst = std::max(worst, std::abs(v - truth));
        CHECK(v < prev);
        CHECK(v <= 1.0 / double(n) + 1e-12);
        prev = v;
    }
    CHECK(worst <= 1e-9);
    // phase invariance
    for (int n : {1, 7, 100}) {
        double base = e11_sequence_value(n, Complex(1));
        for (int k = 0; k < 5; ++k) {
            double th = rng.uniform(0, 6.283185307179586);
            CHECK(std::abs(e11_sequence_value(n, Complex(std::cos(th), std::sin(th))) - base) <=
                  1e-12);
        }
    }
    CHECK_THROWS_AS(e11_sequence_value(0, Complex(1)), ValidationError);
    CHECK_THROWS_AS(e11_sequence_value(1, Complex(2)), ValidationError);
}

TEST_CASE("quotient gauge is contractive and behaves like a gauge") {
    SolverConfig cfg;
    auto herm2 = OperatorSpace::full(2);
    IdealSpec s{{e11_matrix()}};
    MatrixLevel l1(herm2, 1);
    Rng rng(9);
    for (int t = 0; t < 5; ++t) {
        HermitianMatrix x = l1.sample(rng), y = l1.sample(rng);
        double nu = order_gauge(l1, x, cfg).value;
        double qx = quotient_gauge(herm2, s, 1, x, cfg).value;
        CHECK(qx <= nu + cfg.tol);
        double qy = quotient_gauge(herm2, s, 1, y, cfg).value;
        double qxy = quotient_gauge(herm2, s, 1, x + y, cfg).value;
        CHECK(qxy <= qx + qy + 3 * cfg.tol);
    }
}

TEST_CASE("ideal basis must live inside the parent") {
    SolverConfig cfg;
    auto diag = OperatorSpace::diagonal(2);
    HermitianMatrix off(2);
    off.at(0, 1) = 1.0;
    off.at(1, 0) = 1.0;
    CHECK_THROWS_AS(quotient_gauge(diag, IdealSpec{{off}}, 1, HermitianMatrix(2), cfg),
                    ValidationError);
}

} // TEST_SUITE
