#include <benchmark/benchmark.h>

#include "tracesift/metrics.hpp"
#include "tracesift/signal.hpp"
#include "tracesift/simulator.hpp"

namespace {

using namespace tracesift;

CallTrace make_case5_trace(double p_malicious, double mean,
                           std::uint64_t seed) {
  auto [benign, malicious] = case_templates(CaseId::Case5Hd);
  auto universe = std::make_shared<CallUniverse>();
  DeviceModel model{benign, malicious, 1.0 - p_malicious, p_malicious, mean,
                    0.0};
  return run_experiment(model, universe, seed).trace;
}

void BM_RunExperiment(benchmark::State& state) {
  const auto mean = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto trace = make_case5_trace(0.01, mean, 7);
    benchmark::DoNotOptimize(trace.calls.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunExperiment)->Arg(1000)->Arg(10000);

void BM_PredictionSignal(benchmark::State& state) {
  const auto mean = static_cast<double>(state.range(0));
  PipelineConfig config{32, 100};
  auto training = make_case5_trace(0.0, mean, 11);
  auto predictor = train_predictor(training, config);
  auto trace = make_case5_trace(0.01, mean, 13);
  auto rows = bucket(trace, config);
  for (auto _ : state) {
    auto bits = prediction_signal(predictor, rows);
    benchmark::DoNotOptimize(bits.data());
  }
  state.SetItemsProcessed(state.iterations() * rows.size());
}
BENCHMARK(BM_PredictionSignal)->Arg(1000)->Arg(10000);

void BM_ReduceSignal(benchmark::State& state) {
  std::vector<std::uint8_t> signal(state.range(0));
  Rng rng(3);
  for (auto& b : signal) b = rng.bernoulli(0.05) ? 1 : 0;
  PipelineConfig config{32, 100};
  for (auto _ : state)
    benchmark::DoNotOptimize(reduce_signal(signal, config));
  state.SetItemsProcessed(state.iterations() * signal.size());
}
BENCHMARK(BM_ReduceSignal)->Arg(4000)->Arg(40000);

void BM_EuclideanDistance(benchmark::State& state) {
  auto a = make_case5_trace(0.0, static_cast<double>(state.range(0)), 17);
  auto b = make_case5_trace(0.01, static_cast<double>(state.range(0)), 19);
  for (auto _ : state) benchmark::DoNotOptimize(euclidean_distance(a, b));
}
BENCHMARK(BM_EuclideanDistance)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
