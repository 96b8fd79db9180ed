#include <benchmark/benchmark.h>

#include "gaugekit/poly.hpp"
#include "gaugekit/quotient.hpp"
#include "gaugekit/rng.hpp"
#include "gaugekit/spaces.hpp"
#include "gaugekit/unitization.hpp"

using namespace gaugekit;

namespace {

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

void bm_eig_hermitian(benchmark::State& state) {
    Rng rng(7);
    const int n = int(state.range(0));
    HermitianMatrix a = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(a));
}
BENCHMARK(bm_eig_hermitian)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_distance_gauge_lp(benchmark::State& state) {
    const int d = int(state.range(0));
    Rng rng(11);
    std::vector<Vec> gens;
    for (int i = 0; i < d; ++i) {
        Vec e(std::size_t(d), 0.0);
        e[std::size_t(i)] = 1.0;
        gens.push_back(std::move(e));
    }
    PolyCone cone(d, gens);
    PolyNorm norm = PolyNorm::sup(d);
    Vec x = rng.normal_vector(std::size_t(d));
    for (auto _ : state) benchmark::DoNotOptimize(d_gauge_exact(norm, cone, x));
}
BENCHMARK(bm_distance_gauge_lp)->Arg(2)->Arg(4)->Arg(6);

void bm_order_gauge_full(benchmark::State& state) {
    const int m = int(state.range(0));
    Rng rng(13);
    HermitianMatrix a = random_hermitian(m, rng);
    auto basis = herm_basis(m);
    SolverConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(min_opnorm_over_cone({a, basis, {}}, cfg).value);
}
BENCHMARK(bm_order_gauge_full)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_unitization_gauge(benchmark::State& state) {
    Rng rng(17);
    auto v = OperatorSpace::full(2);
    MatrixLevel lvl(v, 1);
    HermitianMatrix a = lvl.sample(rng);
    HermitianMatrix x = random_hermitian(1, rng);
    SolverConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(u_n(v, 1, a, x, cfg));
}
BENCHMARK(bm_unitization_gauge)->Unit(benchmark::kMillisecond);

void bm_e11_value(benchmark::State& state) {
    int n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e11_sequence_value(n, Complex(1)));
        n = n % 1000 + 1;
    }
}
BENCHMARK(bm_e11_value);

} // namespace

BENCHMARK_MAIN();
