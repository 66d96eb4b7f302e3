#include <benchmark/benchmark.h>

#include <thread>

#include "tci/candidates.hpp"
#include "tci/certify.hpp"
#include "tci/random.hpp"

namespace {

// Full metric transport certificate on one 10-point instance; the argument
// is the worker count.
void BM_TciMetric(benchmark::State& state) {
    tci::Rng rng(11);
    const auto inst = tci::random_instance(rng, 10, 10);
    const auto cands = tci::generate_candidates(inst.mu, inst.space, {}, 500, 1);
    tci::CertifyOptions opts;
    opts.workers = static_cast<unsigned>(state.range(0));
    opts.keep_rows = false;
    const auto alpha = tci::ConvexGauge::power(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(tci::verify_tci_metric(inst.mu, inst.space, alpha, cands, opts));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cands.size()));
}
BENCHMARK(BM_TciMetric)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_WeightedPinsker(benchmark::State& state) {
    tci::Rng rng(12);
    const auto inst = tci::random_instance(rng, 10, 10);
    const auto chi = tci::random_function(rng, 10, 0.0, 3.0);
    const auto cands = tci::generate_candidates(inst.mu, inst.space, {}, 500, 2);
    const auto alpha = tci::ConvexGauge::power(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(tci::verify_weighted_pinsker(inst.mu, chi, alpha, cands));
}
BENCHMARK(BM_WeightedPinsker)->Unit(benchmark::kMillisecond);

void BM_Candidates(benchmark::State& state) {
    tci::Rng rng(13);
    const auto inst = tci::random_instance(rng, 10, 10);
    for (auto _ : state) benchmark::DoNotOptimize(tci::generate_candidates(inst.mu, inst.space, {}, 500, 3));
}
BENCHMARK(BM_Candidates)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
