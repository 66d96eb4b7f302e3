#include <benchmark/benchmark.h>

#include "tci/random.hpp"
#include "tci/transport.hpp"

namespace {

void BM_OtCost(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    tci::Rng rng(42);
    const auto inst = tci::random_instance(rng, n, n);
    const auto nu = tci::random_measure(rng, n);
    const auto c = tci::cost_matrix(inst.space, tci::CostSpec::power(2.0));
    for (auto _ : state) benchmark::DoNotOptimize(tci::ot_cost(nu, inst.mu, c).cost);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OtCost)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_KrDual(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    tci::Rng rng(7);
    const auto inst = tci::random_instance(rng, n, n);
    const auto nu = tci::random_measure(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(tci::kr_dual(nu, inst.mu, inst.space).value);
}
BENCHMARK(BM_KrDual)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
