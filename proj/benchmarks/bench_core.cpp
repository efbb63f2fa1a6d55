#include <benchmark/benchmark.h>

#include <heraldsim/analysis.hpp>
#include <heraldsim/conditioning.hpp>
#include <heraldsim/detector.hpp>
#include <heraldsim/monte_carlo.hpp>

using namespace heraldsim;

namespace {

const TwoPortConfig kLossyConfig{0.3, {0.2, 1e-4}, {0.2, 1e-4}};

void BM_SignatureProb(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature_prob(n, Signature::herald(), kLossyConfig));
  }
}
BENCHMARK(BM_SignatureProb)->Arg(4)->Arg(16)->Arg(64);

void BM_HeraldProbTable(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(herald_prob_table(kLossyConfig, cutoff));
  }
}
BENCHMARK(BM_HeraldProbTable)->Arg(8)->Arg(32)->Arg(128);

void BM_Prepare(benchmark::State& state) {
  const double chi = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepare({chi}, kLossyConfig));
  }
}
BENCHMARK(BM_Prepare)->Arg(10)->Arg(50)->Arg(90);

void BM_SplittingRatioSweep(benchmark::State& state) {
  const SweepGrid grid = splitting_ratio_grid({0.1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(grid));
  }
}
BENCHMARK(BM_SplittingRatioSweep);

void BM_OptimizeEtaRef(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_eta_ref({0.1}, {0.0, 1e-6}));
  }
}
BENCHMARK(BM_OptimizeEtaRef);

void BM_McTrials(benchmark::State& state) {
  mc::McConfig cfg;
  cfg.trials = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 42;
  cfg.chi = {0.2};
  cfg.cfg = kLossyConfig;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::run(cfg, 1));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_McTrials)->Arg(100'000)->Arg(1'000'000);

} // namespace

BENCHMARK_MAIN();
