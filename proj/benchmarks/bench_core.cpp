#include <benchmark/benchmark.h>

#include <vector>

#include "trustq/fair_trade.hpp"
#include "trustq/game_engine.hpp"
#include "trustq/scenarios.hpp"
#include "trustq/score.hpp"
#include "trustq/timeseries.hpp"

namespace {

using namespace trustq;

void BM_RunCycle(benchmark::State& state) {
  const CycleParams params{0.65, 0.14, 2.0};
  double v = 1e6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cycle(params, v));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_RunCycle);

void BM_ClosedForm(benchmark::State& state) {
  GameConfig config{1e6, std::vector<CycleParams>(static_cast<std::size_t>(state.range(0)), {0.7, 0.14, 2.0})};
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_n_cycles(config));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosedForm)->RangeMultiplier(4)->Range(1, 1024)->Complexity();

void BM_EigenDecompose(benchmark::State& state) {
  const auto m = build_matrix(0.85, 0.14, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_decompose(m));
}
BENCHMARK(BM_EigenDecompose);

void BM_RawScore(benchmark::State& state) {
  std::vector<MetricEntry> metrics;
  WeightVector weights;
  for (int i = 0; i < state.range(0); ++i) {
    metrics.push_back({"m" + std::to_string(i), MetricCategory::Safety, MetricKind::Fraction, 0.5, {}, {}});
    weights.weights.push_back(0.01);
  }
  for (auto _ : state) benchmark::DoNotOptimize(raw_score(metrics, weights));
}
BENCHMARK(BM_RawScore)->Arg(23)->Arg(1024);

void BM_Fluctuation(benchmark::State& state) {
  std::vector<double> scores;
  for (int i = 0; i < 4096; ++i) scores.push_back((i % 7) * 0.1 - 0.3);
  const auto window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fluctuation(scores, window, 0.2));
}
BENCHMARK(BM_Fluctuation)->Arg(8)->Arg(4096);

void BM_RunScenario(benchmark::State& state) {
  Scenario s{.name = "bench", .initial_value = 1e6, .mode = EvaluationMode::PerCycle, .cycles = {}};
  s.cycles.assign(static_cast<std::size_t>(state.range(0)), {0.7, 0.14, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK(BM_RunScenario)->Arg(4)->Arg(1000);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so the entry point is defined here.
BENCHMARK_MAIN();
