#include "test_helpers.hpp"

using namespace gaugekit;
using gktest::entry_distance;
using gktest::random_hermitian;
using gktest::random_rect;

TEST_SUITE("herm") {

TEST_CASE("eigenvalues of diagonal and symmetric 2x2 inputs") {
    auto d = eig_hermitian(HermitianMatrix::diagonal({3, 1}));
    CHECK(d.eigenvalues[0] == doctest::Approx(1).epsilon(1e-13));
    CHECK(d.eigenvalues[1] == doctest::Approx(3).epsilon(1e-13));

    HermitianMatrix flip(2);
    flip.at(0, 1) = 1.0;
    flip.at(1, 0) = 1.0;
    auto f = eig_hermitian(flip);
    CHECK(f.eigenvalues[0] == doctest::Approx(-1).epsilon(1e-13));
    CHECK(f.eigenvalues[1] == doctest::Approx(1).epsilon(1e-13));
}

TEST_CASE("random 5x5 reconstruction and orthonormality") {
    Rng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        HermitianMatrix a = random_hermitian(5, rng);
        auto d = eig_hermitian(a);
        RectMatrix lam(5, 5);
        for (int i = 0; i < 5; ++i) lam.at(i, i) = d.eigenvalues[std::size_t(i)];
        RectMatrix rec = (d.vectors * lam) * d.vectors.adjoint();
        double scale = std::max(1.0, op_norm(a));
        double err = 0.0;
        RectMatrix uu = d.vectors.adjoint() * d.vectors;
        double orth = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                err = std::max(err, std::abs(rec.at(i, j) - a.at(i, j)));
                orth = std::max(orth, std::abs(uu.at(i, j) - (i == j ? 1.0 : 0.0)));
            }
        CHECK(err <= 1e-10 * scale);
        CHECK(orth <= 1e-10);
        for (int i = 0; i + 1 < 5; ++i)
            CHECK(d.eigenvalues[std::size_t(i)] <= d.eigenvalues[std::size_t(i + 1)]);
    }
}

TEST_CASE("degenerate spectra keep orthonormal eigenvectors") {
    Rng rng(5);
    HermitianMatrix a = HermitianMatrix::diagonal({2, 2, 2, -1});
    // conjugate by a random unitary built from an eigendecomposition
    HermitianMatrix h = random_hermitian(4, rng);
    auto hd = eig_hermitian(h);
    RectMatrix u = hd.vectors;
    RectMatrix conj = (u * RectMatrix::from_hermitian(a)) * u.adjoint();
    HermitianMatrix b = HermitianMatrix::from_raw(4, conj.entries());
    auto d = eig_hermitian(b);
    CHECK(d.eigenvalues[0] == doctest::Approx(-1).epsilon(1e-11));
    CHECK(d.eigenvalues[3] == doctest::Approx(2).epsilon(1e-11));
    RectMatrix uu = d.vectors.adjoint() * d.vectors;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(uu.at(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("eig determinism is bit-identical") {
    Rng rng(77);
    HermitianMatrix a = random_hermitian(6, rng);
    auto d1 = eig_hermitian(a);
    auto d2 = eig_hermitian(a);
    for (int i = 0; i < 6; ++i) {
        CHECK(d1.eigenvalues[std::size_t(i)] == d2.eigenvalues[std::size_t(i)]);
        for (int j = 0; j < 6; ++j) CHECK(d1.vectors.at(i, j) == d2.vectors.at(i, j));
    }
}

TEST_CASE("operator norms") {
    Complex lam(0.6, -0.8); // |lam| = 1
    HermitianMatrix offdiag(2);
    offdiag.at(0, 1) = lam;
    offdiag.at(1, 0) = std::conj(lam);
    CHECK(op_norm(offdiag) == doctest::Approx(1).epsilon(1e-12));
    CHECK(op_norm(HermitianMatrix::diagonal({2, -5})) == doctest::Approx(5).epsilon(1e-12));
    RectMatrix row(1, 2, {Complex(1), Complex(1)});
    CHECK(op_norm(row) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    Rng rng(9);
    for (int t = 0; t < 6; ++t) {
        HermitianMatrix a = random_hermitian(4, rng);
        auto d = eig_hermitian(a);
        double expect = std::max(std::abs(d.lambda_min()), std::abs(d.lambda_max()));
        CHECK(std::abs(op_norm(a) - expect) <= 1e-10 * std::max(1.0, expect));
        CHECK(std::abs(op_norm(RectMatrix::from_hermitian(a)) - expect) <=
              1e-10 * std::max(1.0, expect));
    }
}

TEST_CASE("inverse square root of positive definite matrices") {
    HermitianMatrix i2 = HermitianMatrix::identity(2);
    CHECK(entry_distance(inv_sqrt_pd(i2, 1e-9), i2) <= 1e-12);

    auto h = inv_sqrt_pd(HermitianMatrix::diagonal({4, 9}), 1e-9);
    CHECK(h.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h.at(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    double t = 2.0;
    auto ht = inv_sqrt_pd(HermitianMatrix::identity(3) * t, 1e-9);
    CHECK(entry_distance(ht, HermitianMatrix::identity(3) * (1.0 / std::sqrt(t))) <= 1e-12);

    // H X H = I within 1e-9 on a random PD matrix
    Rng rng(13);
    RectMatrix g = random_rect(3, 3, rng);
    RectMatrix gg = g.adjoint() * g;
    HermitianMatrix x = HermitianMatrix::from_raw(3, gg.entries()) + HermitianMatrix::identity(3) * 0.1;
    HermitianMatrix hx = inv_sqrt_pd(x, 1e-9);
    RectMatrix hxh = (RectMatrix::from_hermitian(hx) * RectMatrix::from_hermitian(x)) *
                     RectMatrix::from_hermitian(hx);
    HermitianMatrix res = HermitianMatrix::from_raw(3, hxh.entries()) - HermitianMatrix::identity(3);
    CHECK(op_norm(res) <= 1e-9);

    CHECK_THROWS_AS(inv_sqrt_pd(HermitianMatrix::diagonal({1, -0.5}), 1e-9), NotPositiveDefinite);
    CHECK_THROWS_AS(inv_sqrt_pd(i2, -1.0), ValidationError);
}

TEST_CASE("congruence: compression, identity, PSD closure") {
    Rng rng(21);
    HermitianMatrix a = random_hermitian(3, rng);
    // row e_j picks out the j-th diagonal entry
    for (int j = 0; j < 3; ++j) {
        RectMatrix ej(1, 3);
        ej.at(0, j) = 1.0;
        HermitianMatrix c = congruence(ej, a);
        CHECK(c.dim() == 1);
        CHECK(std::abs(c.at(0, 0) - a.at(j, j)) <= 1e-14);
    }
    CHECK(entry_distance(congruence(RectMatrix::identity(3), a), a) <= 1e-14);

    // PSD closure via the eigenvalue oracle
    for (int t = 0; t < 6; ++t) {
        RectMatrix g = random_rect(3, 3, rng);
        RectMatrix gg = g.adjoint() * g;
        HermitianMatrix psd = HermitianMatrix::from_raw(3, gg.entries());
        RectMatrix x = random_rect(rng.uniform_int(1, 4), 3, rng);
        HermitianMatrix out = congruence(x, psd);
        CHECK(eig_hermitian(out).lambda_min() >= -1e-12 * std::max(1.0, op_norm(out)));
    }
    CHECK_THROWS_AS(congruence(RectMatrix(2, 2), random_hermitian(3, rng)), ValidationError);
}

TEST_CASE("direct sums") {
    CHECK(entry_distance(direct_sum(HermitianMatrix::diagonal({1}), HermitianMatrix::diagonal({2})),
                         HermitianMatrix::diagonal({1, 2})) == 0.0);
    CHECK(direct_sum(HermitianMatrix(2), HermitianMatrix(3)).is_zero());

    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
        HermitianMatrix a = random_hermitian(3, rng), b = random_hermitian(2, rng);
        HermitianMatrix ab = direct_sum(a, b);
        CHECK(std::abs(op_norm(ab) - std::max(op_norm(a), op_norm(b))) <= 1e-10);
        // spectrum is the sorted multiset union
        auto da = eig_hermitian(a).eigenvalues;
        auto db = eig_hermitian(b).eigenvalues;
        Vec uni;
        uni.insert(uni.end(), da.begin(), da.end());
        uni.insert(uni.end(), db.begin(), db.end());
        std::sort(uni.begin(), uni.end());
        auto dab = eig_hermitian(ab).eigenvalues;
        for (std::size_t i = 0; i < uni.size(); ++i)
            CHECK(std::abs(uni[i] - dab[i]) <= 1e-10 * std::max(1.0, std::abs(uni[i])));
    }
}

TEST_CASE("validation rejects broken input with a diagnostic") {
    std::vector<Complex> bad = {Complex(0), Complex(1), Complex(2), Complex(0)};
    CHECK_THROWS_WITH_AS(HermitianMatrix(2, bad), doctest::Contains("symmetry violation"),
                         ValidationError);
    std::vector<Complex> nan = {Complex(std::nan("")), Complex(0), Complex(0), Complex(0)};
    CHECK_THROWS_WITH_AS(HermitianMatrix(2, nan), doctest::Contains("non-finite"),
                         ValidationError);
    // inputs are symmetrized after validation
    std::vector<Complex> near = {Complex(1), Complex(0.5, 1e-14), Complex(0.5, -3e-14),
                                 Complex(2)};
    HermitianMatrix a(2, near);
    CHECK(a.at(0, 1) == std::conj(a.at(1, 0)));
}

} // TEST_SUITE
