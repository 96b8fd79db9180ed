#include "test_helpers.hpp"

#include "gaugekit/lp.hpp"

using namespace gaugekit;

TEST_SUITE("lp") {

TEST_CASE("one-variable anchors") {
    LPProblem p;
    p.add_var(-kInf, kInf, 1.0);
    p.add_row({1.0}, RowSense::ge, 3.0);
    auto s = lp_solve(p);
    CHECK(s.status == LPStatus::optimal);
    CHECK(s.objective == doctest::Approx(3).epsilon(1e-12));
    CHECK(s.x[0] == doctest::Approx(3).epsilon(1e-12));

    LPProblem q;
    q.add_var(-kInf, kInf, 0.0);
    q.add_row({1.0}, RowSense::le, 0.0);
    q.add_row({1.0}, RowSense::ge, 1.0);
    CHECK(lp_solve(q).status == LPStatus::infeasible);

    LPProblem w;
    w.add_var(0.0, kInf, -1.0);
    CHECK(lp_solve(w).status == LPStatus::unbounded);
}

TEST_CASE("maximum over the dual ball of the sup norm attains a vertex value") {
    // max <x0, y> over sum |y_i| <= 1 equals max_i |x0_i|, the value at a
    // vertex +-e_i of the cross-polytope: cross-checked by enumeration.
    Rng rng(3);
    for (int d = 1; d <= 4; ++d) {
        for (int trial = 0; trial < 5; ++trial) {
            Vec x0 = rng.normal_vector(std::size_t(d));
            LPProblem p;
            p.maximize = true;
            for (int i = 0; i < d; ++i) p.add_var(-kInf, kInf, x0[std::size_t(i)]);
            for (int i = 0; i < d; ++i) p.add_var(0.0, kInf, 0.0); // epigraph s_i
            for (int i = 0; i < d; ++i) {
                Vec up(std::size_t(2 * d), 0.0), dn(std::size_t(2 * d), 0.0);
                up[std::size_t(i)] = 1.0;
                up[std::size_t(d + i)] = -1.0;
                dn[std::size_t(i)] = -1.0;
                dn[std::size_t(d + i)] = -1.0;
                p.add_row(std::move(up), RowSense::le, 0.0);
                p.add_row(std::move(dn), RowSense::le, 0.0);
            }
            Vec cap(std::size_t(2 * d), 0.0);
            for (int i = 0; i < d; ++i) cap[std::size_t(d + i)] = 1.0;
            p.add_row(std::move(cap), RowSense::le, 1.0);
            auto s = lp_solve(p);
            REQUIRE(s.status == LPStatus::optimal);
            double vertex_best = 0.0; // enumerate +-e_i
            for (int i = 0; i < d; ++i) vertex_best = std::max(vertex_best, std::abs(x0[std::size_t(i)]));
            CHECK(s.objective == doctest::Approx(vertex_best).epsilon(1e-10));
        }
    }
}

TEST_CASE("optimal solutions satisfy the residual and duality-gap contracts") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int n = rng.uniform_int(2, 6), m = rng.uniform_int(1, 5);
        LPProblem p;
        // bounded box keeps every instance solvable
        for (int i = 0; i < n; ++i) p.add_var(-5.0, 5.0, rng.normal());
        for (int r = 0; r < m; ++r) {
            Vec row = rng.normal_vector(std::size_t(n));
            RowSense sense = trial % 3 == 0   ? RowSense::le
                             : trial % 3 == 1 ? RowSense::ge
                                              : RowSense::eq;
            // pass through a feasible point so equality rows stay feasible
            double b = 0.0;
            for (double a : row) b += 0.3 * a;
            p.add_row(std::move(row), sense, b);
        }
        auto s = lp_solve(p);
        REQUIRE(s.status == LPStatus::optimal);
        CHECK(s.primal_residual <= 1e-9);
        CHECK(s.duality_gap <= 1e-8);
    }
}

TEST_CASE("degenerate tableau still terminates") {
    // Many redundant rows through the origin invite stalling pivots.
    LPProblem p;
    for (int i = 0; i < 4; ++i) p.add_var(0.0, kInf, -1.0);
    for (int r = 0; r < 10; ++r) {
        Vec row(4, 1.0);
        row[std::size_t(r % 4)] = 2.0;
        p.add_row(std::move(row), RowSense::le, r < 5 ? 0.0 : 1.0);
    }
    auto s = lp_solve(p);
    CHECK(s.status == LPStatus::optimal);
    CHECK(s.primal_residual <= 1e-9);
}

} // TEST_SUITE
