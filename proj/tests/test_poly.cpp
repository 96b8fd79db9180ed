#include "test_helpers.hpp"

#include "gaugekit/poly.hpp"
#include "gaugekit/verify.hpp"

using namespace gaugekit;

namespace {

PolyCone entrywise(int d) {
    std::vector<Vec> gens;
    for (int i = 0; i < d; ++i) {
        Vec e(std::size_t(d), 0.0);
        e[std::size_t(i)] = 1.0;
        gens.push_back(std::move(e));
    }
    return PolyCone(d, std::move(gens));
}

Vec neg(const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

} // namespace

TEST_SUITE("poly") {

TEST_CASE("distance gauge closed forms") {
    // half-line cone on R reproduces the scalar gauge
    PolyCone half(1, {{1}});
    PolyNorm abs1 = PolyNorm::sup(1);
    for (double t : {-3.0, -0.5, 0.0, 1e-3, 2.0, 117.0})
        CHECK(d_gauge_exact(abs1, half, {t}) == doctest::Approx(scalar_u(t)).epsilon(1e-12));

    PolyCone cone = entrywise(2);
    PolyNorm nsup = PolyNorm::sup(2);
    CHECK(d_gauge_exact(nsup, cone, {1, -7}) == doctest::Approx(1).epsilon(1e-12));

    // cone {0}: the distance gauge is the norm itself
    PolyCone zero(2, {});
    CHECK(d_gauge_exact(nsup, zero, {1, -7}) == doctest::Approx(7).epsilon(1e-12));

    // entrywise cone with the sup norm: d(x) = max(max_i x_i, 0) exactly
    Rng rng(5);
    for (int d = 1; d <= 5; ++d) {
        PolyCone cd = entrywise(d);
        PolyNorm nd = PolyNorm::sup(d);
        for (int t = 0; t < 20; ++t) {
            Vec x = rng.normal_vector(std::size_t(d));
            double expect = 0;
            for (double xi : x) expect = std::max(expect, xi);
            CHECK(d_gauge_exact(nd, cd, x) == doctest::Approx(expect).epsilon(1e-11));
        }
    }
}

TEST_CASE("distance gauge satisfies the gauge axioms LP-exactly") {
    Rng rng(19);
    for (int s = 0; s < 10; ++s) {
        PolySpace sp = random_poly_space(rng, 4);
        for (int it = 0; it < 15; ++it) {
            Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
            Vec y = rng.normal_vector(std::size_t(sp.norm.dim));
            double t = rng.log_uniform(1e-2, 1e2);
            Vec xy(x.size()), tx(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                xy[i] = x[i] + y[i];
                tx[i] = t * x[i];
            }
            double dx = d_gauge_exact(sp.norm, sp.cone, x);
            CHECK(d_gauge_exact(sp.norm, sp.cone, xy) <=
                  dx + d_gauge_exact(sp.norm, sp.cone, y) + 1e-9);
            CHECK(std::abs(d_gauge_exact(sp.norm, sp.cone, tx) - t * dx) <=
                  1e-9 * std::max(1.0, t * dx));
        }
    }
}

TEST_CASE("cone recovery from the conjugate kernel") {
    Rng rng(23);
    for (int s = 0; s < 6; ++s) {
        PolySpace sp = random_poly_space(rng, 4);
        for (const auto& g : sp.cone.generators)
            CHECK(d_gauge_exact(sp.norm, sp.cone, neg(g)) <= 1e-9);
        for (int it = 0; it < 20; ++it) {
            Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
            CHECK(sp.cone.contains(x, 1e-9) ==
                  (d_gauge_exact(sp.norm, sp.cone, neg(x)) <= 1e-9));
        }
    }
}

TEST_CASE("normality of the sup/entrywise space, exhaustive sign patterns") {
    // exhaustive oracle for d <= 3: chains from sign-pattern grids
    for (int d = 1; d <= 3; ++d) {
        PolyCone cone = entrywise(d);
        PolyNorm norm = PolyNorm::sup(d);
        int total = 1;
        for (int i = 0; i < d; ++i) total *= 3;
        for (int yi = 0; yi < total; ++yi)
            for (int pi = 0; pi < total; ++pi) {
                Vec y(std::size_t(d), 0.0), p(std::size_t(d), 0.0), q(std::size_t(d), 0.0);
                int yy = yi, pp = pi;
                for (int i = 0; i < d; ++i) {
                    y[std::size_t(i)] = double(yy % 3) - 1.0;
                    p[std::size_t(i)] = double(pp % 3) * 0.5;
                    q[std::size_t(i)] = double((pp + 1) % 3) * 0.5;
                    yy /= 3;
                    pp /= 3;
                }
                Vec x(std::size_t(d), 0.0), z(std::size_t(d), 0.0);
                for (int i = 0; i < d; ++i) {
                    x[std::size_t(i)] = y[std::size_t(i)] - p[std::size_t(i)];
                    z[std::size_t(i)] = y[std::size_t(i)] + q[std::size_t(i)];
                }
                CHECK(norm.value(y) <= std::max(norm.value(x), norm.value(z)) + 1e-12);
            }
        auto rep = check_normal_exact(norm, cone, 60, 7);
        CHECK(rep.worst_violation == 0.0);
    }
}

TEST_CASE("functional range endpoints") {
    PolyCone cone = entrywise(2);
    PolyNorm nsup = PolyNorm::sup(2);
    auto [lo0, hi0] = functional_range(nsup, cone, {0, 0});
    CHECK(lo0 == doctest::Approx(0).epsilon(1e-12));
    CHECK(hi0 == doctest::Approx(0).epsilon(1e-12));
    auto [lo, hi] = functional_range(nsup, cone, {1, -7});
    CHECK(lo == doctest::Approx(-7).epsilon(1e-10));
    CHECK(hi == doctest::Approx(1).epsilon(1e-10));
    // cone members: range is [0, |x|]
    auto [lop, hip] = functional_range(nsup, cone, {0.3, 0.9});
    CHECK(lop == doctest::Approx(0).epsilon(1e-10));
    CHECK(hip == doctest::Approx(0.9).epsilon(1e-10));
}

TEST_CASE("Hahn-Banach extension on the polyhedral backend") {
    PolyCone cone = entrywise(2);
    PolyNorm nsup = PolyNorm::sup(2);
    auto r = hb_extend(nsup, cone, {{1, 1}}, {1.0});
    REQUIRE(r.precondition_ok);
    REQUIRE(r.extended);
    CHECK(r.functional[0] >= -1e-9);
    CHECK(r.functional[1] >= -1e-9);
    CHECK(r.functional[0] + r.functional[1] == doctest::Approx(1).epsilon(1e-9));

    // f = 0 extends by g = 0 (any returned g must be contractive and vanish on S)
    auto rz = hb_extend(nsup, cone, {{1, 1}}, {0.0});
    REQUIRE(rz.extended);
    CHECK(std::abs(rz.functional[0] + rz.functional[1]) <= 1e-9);

    // S = full space pins g = f
    auto rf = hb_extend(nsup, cone, {{1, 0}, {0, 1}}, {0.25, 0.5});
    REQUIRE(rf.extended);
    CHECK(rf.functional[0] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(rf.functional[1] == doctest::Approx(0.5).epsilon(1e-9));

    // a non-contractive f is rejected with a witness
    auto rbad = hb_extend(nsup, cone, {{1, 1}}, {5.0});
    CHECK(!rbad.precondition_ok);
    CHECK(rbad.violation_witness.has_value());
}

TEST_CASE("cone and norm validation") {
    CHECK(entrywise(3).is_proper());
    CHECK(!PolyCone(2, {{1, 0}, {-1, 0}}).is_proper());
    CHECK_THROWS_AS(PolyCone(2, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(PolyNorm::polytope(2, {{1, 0}, {0, 1}}), ValidationError); // not symmetric
    CHECK_THROWS_AS(PolyNorm::polytope(2, {{1, 0}, {-1, 0}}), ValidationError); // no interior
    CHECK_THROWS_AS(PolyNorm::polytope(7, {}), ValidationError);               // dimension cap
    // generators violating a declared halfspace
    CHECK_THROWS_AS(PolyCone(2, {{1, 0}, {0, -1}}, {{0, 1}}), ValidationError);

    PolyNorm l1 = PolyNorm::polytope(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(l1.value({3, -4}) == doctest::Approx(7).epsilon(1e-11));
}

TEST_CASE("quotient distance with free coset directions") {
    PolyCone cone = entrywise(2);
    PolyNorm nsup = PolyNorm::sup(2);
    std::vector<Vec> coset = {{1, 0}};
    for (double a : {-2.0, 0.0, 0.7, 3.0})
        CHECK(d_gauge_quotient_exact(nsup, cone, coset, {0, a}) ==
              doctest::Approx(std::max(a, 0.0)).epsilon(1e-11));
}

} // TEST_SUITE
