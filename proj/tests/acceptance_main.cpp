// Acceptance suite: one criterion per function, one pass/fail line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gaugekit/gauge.hpp"
#include "gaugekit/poly.hpp"
#include "gaugekit/quotient.hpp"
#include "gaugekit/unitization.hpp"
#include "gaugekit/verify.hpp"

using namespace gaugekit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, bool pass, const char* what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec negate(const Vec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

HermitianMatrix random_hermitian(int n, Rng& rng) {
    HermitianMatrix a(n);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
            Complex z(rng.normal(), rng.normal());
            a.at(i, j) = z;
            a.at(j, i) = std::conj(z);
        }
    }
    return a;
}

// 1. Gauge axioms of the exact polyhedral distance gauge.
void criterion1() {
    auto t0 = Clock::now();
    Rng rng(0xA1);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
        PolySpace sp = random_poly_space(rng, 5);
        for (int it = 0; it < 100; ++it) {
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
            worst = std::max(worst, d_gauge_exact(sp.norm, sp.cone, xy) - dx - dy);
            worst = std::max(worst, std::abs(d_gauge_exact(sp.norm, sp.cone, tx) - t * dx));
        }
    }
    double secs = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst slack %.3e <= 1e-9, %.1fs <= 30s", worst, secs);
    report(1, worst <= 1e-9 && secs <= 30.0, "polyhedral gauge axioms, LP-exact", detail);
}

// 2. Cone recovery from the conjugate kernel.
void criterion2() {
    Rng rng(0xA2);
    int mismatches = 0, checks = 0;
    for (int s = 0; s < 50; ++s) {
        PolySpace sp = random_poly_space(rng, 5);
        for (const auto& g : sp.cone.generators) {
            if (d_gauge_exact(sp.norm, sp.cone, negate(g)) > 1e-9) ++mismatches;
            ++checks;
        }
        for (int it = 0; it < 100; ++it) {
            Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
            bool member = sp.cone.contains(x, 1e-9);
            bool recovered = d_gauge_exact(sp.norm, sp.cone, negate(x)) <= 1e-9;
            if (member != recovered) ++mismatches;
            ++checks;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d mismatches over %d membership checks", mismatches,
                  checks);
    report(2, mismatches == 0, "induced cone recovery", detail);
}

// 3. Solver distance against the eigenvalue closed form on full spaces.
void criterion3() {
    auto t0 = Clock::now();
    Rng rng(0xA3);
    SolverConfig cfg;
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        auto basis = herm_basis(m);
        for (int it = 0; it < 100; ++it) {
            HermitianMatrix a = random_hermitian(m, rng);
            auto rep = min_opnorm_over_cone({a, basis, {}}, cfg);
            double truth = std::max(eig_hermitian(a).lambda_max(), 0.0);
            worst = std::max(worst, std::abs(rep.value - truth));
        }
    }
    double secs = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst |solver - closed form| %.3e <= 2e-4, %.1fs <= 120s",
                  worst, secs);
    report(3, worst <= 2e-4 && secs <= 120.0, "order-unit gauge equals distance gauge", detail);
}

// 4. The two level-gauge axioms, full space and random subspace.
void criterion4() {
    SolverConfig cfg;
    auto full_rep = check_mos_axioms(OperatorSpace::full(2), 4, 50, 0xA4, cfg);
    Rng rng(0xA4F);
    std::vector<HermitianMatrix> sub;
    for (int k = 0; k < 3; ++k) sub.push_back(random_hermitian(3, rng));
    auto sub_rep = check_mos_axioms(OperatorSpace(3, sub), 2, 25, rng.next_u64(), cfg, true);
    bool pass = full_rep.compression_worst <= 3e-4 && full_rep.directsum_worst <= 3e-4 &&
                sub_rep.compression_worst <= 5e-4 && sub_rep.directsum_worst <= 5e-4 &&
                sub_rep.certified;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "full: comp %.2e dsum %.2e <= 3e-4; subspace: comp %.2e dsum %.2e <= 5e-4, "
                  "certified=%d",
                  full_rep.compression_worst, full_rep.directsum_worst, sub_rep.compression_worst,
                  sub_rep.directsum_worst, int(sub_rep.certified));
    report(4, pass, "level gauge axioms (compression, direct sum)", detail);
}

// 5. The unitization embeds gauge-isometrically.
void criterion5() {
    Rng rng(0xA5);
    SolverConfig cfg;
    double worst = 0.0;
    for (int it = 0; it < 30; ++it) {
        OperatorSpace v = [&] {
            switch (it % 3) {
            case 0: return OperatorSpace::full(2);
            case 1: return OperatorSpace(2, {random_hermitian(2, rng), random_hermitian(2, rng)});
            default:
                return OperatorSpace(3, {random_hermitian(3, rng), random_hermitian(3, rng),
                                         random_hermitian(3, rng)});
            }
        }();
        int n = it < 22 ? 1 : 2;
        MatrixLevel lvl(v, n);
        HermitianMatrix a = lvl.sample(rng);
        double d = order_gauge(lvl, a, cfg).value;
        double u = u_n(v, n, a, HermitianMatrix(n), cfg);
        worst = std::max(worst, std::abs(u - d));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst |u_n(A,0) - d(A)| %.3e <= 5e-4", worst);
    report(5, worst <= 5e-4, "unitization embedding is gauge-isometric", detail);
}

// 6. Scalar restriction of the unitization gauge.
void criterion6() {
    Rng rng(0xA6);
    SolverConfig cfg;
    auto v = OperatorSpace::full(2);
    double worst = 0.0;
    for (int it = 0; it < 100; ++it) {
        int n = rng.uniform_int(1, 4);
        HermitianMatrix x = random_hermitian(n, rng);
        double got = u_n(v, n, HermitianMatrix(2 * n), x, cfg);
        worst = std::max(worst, std::abs(got - std::max(eig_hermitian(x).lambda_max(), 0.0)));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst |u_n(0,X) - max(l_max,0)| %.3e <= 1e-8", worst);
    report(6, worst <= 1e-8, "scalar restriction of the unitization gauge", detail);
}

// 7. The matrix-unit span: values and the refutation certificate.
void criterion7() {
    auto t0 = Clock::now();
    SolverConfig cfg;
    double worst = 0.0;
    for (int n = 1; n <= 1000; ++n) {
        double v = e11_sequence_value(n, Complex(1));
        double truth = (-double(n) + std::sqrt(double(n) * n + 4.0)) / 2.0;
        worst = std::max(worst, std::abs(v - truth));
    }
    auto herm2 = OperatorSpace::full(2);
    HermitianMatrix e11(2);
    e11.at(0, 0) = 1.0;
    auto verdict = is_gauge_ideal(herm2, IdealSpec{{e11}}, 8, 0xA7, cfg);
    double cert = std::max(verdict.certificate_q_pos, verdict.certificate_q_neg);
    double secs = seconds_since(t0);
    bool pass = worst <= 1e-9 && !verdict.ideal_witnessed && verdict.certificate.has_value() &&
                cert <= 1e-3 && secs <= 10.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "values %.2e <= 1e-9; refuted=%d cert gauges %.2e <= 1e-3; %.1fs <= 10s", worst,
                  int(!verdict.ideal_witnessed), cert, secs);
    report(7, pass, "matrix-unit span counterexample", detail);
}

// 8. Contractive-functional interval endpoints.
void criterion8() {
    Rng rng(0xA8);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        PolySpace sp = random_poly_space(rng, 5);
        Vec x = rng.normal_vector(std::size_t(sp.norm.dim));
        auto [lo, hi] = functional_range(sp.norm, sp.cone, x);
        worst = std::max(worst, std::abs(hi - d_gauge_exact(sp.norm, sp.cone, x)));
        worst = std::max(worst, std::abs(lo + d_gauge_exact(sp.norm, sp.cone, negate(x))));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst endpoint deviation %.3e <= 1e-8", worst);
    report(8, worst <= 1e-8, "functional range equals the gauge interval", detail);
}

// 9. Gauge-contractive congruences sample as cpcc; the transpose does not.
void criterion9() {
    Rng rng(0xA9);
    SolverConfig cfg;
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
        int md = rng.uniform_int(2, 3), mc = rng.uniform_int(2, 3);
        RectMatrix z(md, mc);
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < mc; ++j) z.at(i, j) = Complex(rng.normal(), rng.normal());
        double zn = op_norm(z) / rng.uniform(0.3, 1.0);
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < mc; ++j) z.at(i, j) /= zn;
        auto phi = congruence_map(OperatorSpace::full(md), OperatorSpace::full(mc), z);
        auto rep = check_cpcc(phi, 3, 6, rng.next_u64(), cfg);
        worst = std::max({worst, rep.positivity_worst, rep.contraction_worst});
    }
    auto trep = check_cpcc(transpose_map(2), 2, 14, rng.next_u64(), cfg);
    bool transpose_flagged = trep.positivity_witness.has_value() &&
                             trep.positivity_witness_level == 2 && trep.positivity_worst > 1e-3;
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "congruence violations %.3e <= 1e-5; transpose flagged at level 2: %d", worst,
                  int(transpose_flagged));
    report(9, worst <= 1e-5 && transpose_flagged, "gauge-contractive maps sample as cpcc", detail);
}

// 10. The restriction-gauge extension criterion.
void criterion10() {
    SolverConfig cfg;
    auto v = OperatorSpace::full(2);
    HermitianMatrix m(2, {Complex(-1), Complex(1), Complex(1), Complex(0)});
    auto gap = extension_condition(v, {m}, 6, 1, 0xAA, cfg);
    auto same = extension_condition(v, v.basis(), 6, 2, 0xAB, cfg);
    bool pass = std::abs(gap.max_gap - 1.0) <= 1e-3 && std::abs(same.max_gap) <= 2.0 * cfg.tol;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "indefinite-span gap %.6f = 1 +- 1e-3; S=V gap %.2e <= 2tol",
                  gap.max_gap, same.max_gap);
    report(10, pass, "extension criterion gaps", detail);
}

// 11. Byte-identical verification artifacts from the CLI.
void criterion11(const char* cli_path) {
    if (!cli_path) {
        report(11, false, "determinism of verify all", "CLI binary path not supplied");
        return;
    }
    std::string out1 = "/tmp/gaugekit_accept_run1.json";
    std::string out2 = "/tmp/gaugekit_accept_run2.json";
    std::string base = std::string(cli_path) + " verify all --seed 7 --report json";
    std::string cmd1 = base + " --out " + out1 + " > /dev/null";
    std::string cmd2 = base + " --out " + out2 + " > /dev/null";
    int rc1 = std::system(cmd1.c_str());
    int rc2 = std::system(cmd2.c_str());
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string a = slurp(out1), b = slurp(out2);
    bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "exit codes %d/%d, %zu bytes, identical=%d", rc1, rc2,
                  a.size(), int(a == b));
    report(11, pass, "determinism of verify all", detail);
}

} // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11(cli);
    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
