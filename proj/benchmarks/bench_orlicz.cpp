#include <benchmark/benchmark.h>

#include "tci/convex_calc.hpp"
#include "tci/orlicz.hpp"
#include "tci/random.hpp"

namespace {

void BM_LuxemburgNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    tci::Rng rng(3);
    const auto mu = tci::random_measure(rng, n);
    const auto f = tci::random_function(rng, n, -2.0, 2.0);
    const auto alpha = tci::ConvexGauge::power(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(tci::luxemburg_norm(f, mu, alpha));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(10)->Arg(100)->Arg(1000);

void BM_UpperBound(benchmark::State& state) {
    tci::Rng rng(4);
    const auto mu = tci::random_measure(rng, 10);
    const auto chi = tci::random_function(rng, 10, 0.0, 3.0);
    const auto grid = tci::default_delta_grid();
    const auto alpha = tci::ConvexGauge::power(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(tci::luxemburg_upper_bound(chi, mu, alpha, grid).value);
}
BENCHMARK(BM_UpperBound);

void BM_GridConjugate(benchmark::State& state) {
    std::vector<double> t;
    std::vector<double> v;
    for (int i = 0; i <= state.range(0); ++i) {
        t.push_back(4.0 * i / static_cast<double>(state.range(0)));
        v.push_back(t.back() * t.back() * t.back());
    }
    const auto g = tci::ConvexGauge::grid_sampled(t, v, 60.0);
    for (auto _ : state) benchmark::DoNotOptimize(tci::monotone_conjugate(g)(5.0));
}
BENCHMARK(BM_GridConjugate)->Arg(100)->Arg(1000);

void BM_GaugeConstants(benchmark::State& state) {
    const auto alpha = tci::ConvexGauge::power(2.0, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(tci::gauge_constants(alpha).m.m_alpha);
}
BENCHMARK(BM_GaugeConstants);

}  // namespace

BENCHMARK_MAIN();
