#include "test_helpers.hpp"

#include "gaugekit/poly.hpp"
#include "gaugekit/spaces.hpp"

using namespace gaugekit;
using gktest::random_hermitian;

TEST_SUITE("spaces") {

TEST_CASE("amplification dimensions and membership") {
    auto v = OperatorSpace::full(2);
    MatrixLevel l1(v, 1);
    CHECK(l1.basis().size() == 4);
    // level-1 basis spans exactly V
    for (const auto& b : v.basis()) {
        double res = 1;
        l1.coords(b, &res);
        CHECK(res <= 1e-10);
    }
    MatrixLevel l2(v, 2);
    CHECK(l2.basis().size() == 16); // real dimension of Herm(4)

    Rng rng(7);
    OperatorSpace diag = OperatorSpace::diagonal(3);
    MatrixLevel dl(diag, 2);
    CHECK(dl.basis().size() == 3 * 4);
    // an element with an off-diagonal entry inside a block is rejected
    HermitianMatrix bad(6);
    bad.at(0, 1) = 1.0;
    bad.at(1, 0) = 1.0;
    double res = 0;
    dl.coords(bad, &res);
    CHECK(res > 1e-8);
    SolverConfig cfg;
    CHECK_THROWS_AS(order_gauge(dl, bad, cfg), MembershipError);
    (void)rng;
}

TEST_CASE("order gauge values") {
    SolverConfig cfg;
    auto v2 = OperatorSpace::full(2);
    auto g = order_gauge(v2, 1, HermitianMatrix::diagonal({2, -5}), cfg);
    CHECK(g.exact);
    CHECK(g.value == doctest::Approx(2).epsilon(1e-12));

    // negative semidefinite elements sit in the closure of the negative cone
    CHECK(order_gauge(v2, 1, HermitianMatrix::diagonal({-1, -3}), cfg).value == 0.0);

    // diagonal subspace agrees with the polyhedral oracle
    auto vd = OperatorSpace::diagonal(3);
    PolyCone cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    PolyNorm nsup = PolyNorm::sup(3);
    Rng rng(11);
    for (int t = 0; t < 6; ++t) {
        Vec dv = rng.normal_vector(3);
        double got = order_gauge(vd, 1, HermitianMatrix::diagonal(dv), cfg).value;
        CHECK(std::abs(got - d_gauge_exact(nsup, cone, dv)) <= 2e-4);
    }
}

TEST_CASE("rectangular norms via the self-adjoint embedding") {
    SolverConfig cfg;
    auto v1 = OperatorSpace::full(1);
    RectBlockMatrix scalar;
    scalar.block_rows = scalar.block_cols = 1;
    scalar.realized = RectMatrix(1, 1, {Complex(-3)});
    CHECK(rect_norm(v1, scalar, cfg) == doctest::Approx(3).epsilon(1e-10));

    auto v2 = OperatorSpace::full(2);
    RectBlockMatrix blk;
    blk.block_rows = blk.block_cols = 1;
    blk.realized = RectMatrix(2, 2, {Complex(0), Complex(1), Complex(0), Complex(0)});
    CHECK(rect_norm(v2, blk, cfg) == doctest::Approx(1).epsilon(1e-10));

    RectBlockMatrix zero;
    zero.block_rows = zero.block_cols = 1;
    zero.realized = RectMatrix(2, 2);
    CHECK(rect_norm(v2, zero, cfg) == 0.0);

    // entries outside the span must be rejected
    auto vd = OperatorSpace::diagonal(2);
    RectBlockMatrix out;
    out.block_rows = out.block_cols = 1;
    out.realized = RectMatrix(2, 2, {Complex(0), Complex(1), Complex(1), Complex(0)});
    CHECK_THROWS_AS(rect_norm(vd, out, cfg), MembershipError);

    // the rectangular norm agrees with the operator norm on the full space
    Rng rng(13);
    for (int t = 0; t < 3; ++t) {
        RectBlockMatrix b;
        b.block_rows = 1;
        b.block_cols = 2;
        b.realized = gktest::random_rect(2, 4, rng);
        CHECK(std::abs(rect_norm(v2, b, cfg) - op_norm(b.realized)) <= 1e-9);
    }
}

TEST_CASE("level gauges satisfy the compression and direct-sum rules") {
    SolverConfig cfg;
    auto v = OperatorSpace::full(2);
    auto rep = check_mos_axioms(v, 4, 25, 7, cfg);
    CHECK(rep.compression_worst <= 3e-4);
    CHECK(rep.directsum_worst <= 3e-4);

    // identity compression forces zero slack
    MatrixLevel l2(v, 2);
    Rng rng(17);
    HermitianMatrix a = l2.sample(rng);
    double da = order_gauge(l2, a, cfg).value;
    RectMatrix id = RectMatrix::identity(2);
    HermitianMatrix iai = congruence(scalar_kron(id, 2).adjoint(), a);
    CHECK(std::abs(order_gauge(l2, iai, cfg).value - da) <= 1e-12);

    Rng rng2(19);
    std::vector<HermitianMatrix> sub_basis;
    for (int k = 0; k < 3; ++k) sub_basis.push_back(random_hermitian(3, rng2));
    OperatorSpace sub(3, sub_basis);
    auto rep2 = check_mos_axioms(sub, 2, 8, 23, cfg, true);
    CHECK(rep2.compression_worst <= 5e-4);
    CHECK(rep2.directsum_worst <= 5e-4);
    CHECK(rep2.certified);
}

TEST_CASE("chain normality at matrix levels") {
    SolverConfig cfg;
    auto rep = check_normal_level(OperatorSpace::full(2), 2, 8, 29, cfg);
    CHECK(rep.worst_violation <= 1e-9);
    // P = Q = 0 chains are trivially fine even when no cone members exist
    HermitianMatrix indef(2, {Complex(-1), Complex(1), Complex(1), Complex(0)});
    OperatorSpace thin(2, {indef});
    auto rep2 = check_normal_level(thin, 1, 4, 31, cfg);
    CHECK(rep2.worst_violation <= 1e-9);
}

TEST_CASE("unit handling") {
    auto v = OperatorSpace::full(2);
    CHECK(v.unit_index().has_value());
    MatrixLevel l2(v, 2);
    CHECK(op_norm(l2.unit() - HermitianMatrix::identity(4)) <= 1e-14);
    OperatorSpace no_unit(2, herm_basis(2));
    CHECK_THROWS_AS(no_unit.unit(), UnitMissing);
    // a non-positive-definite unit is rejected
    CHECK_THROWS_AS(OperatorSpace(2, herm_basis(2), 1), ValidationError);
}

} // TEST_SUITE
