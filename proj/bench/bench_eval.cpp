// Serial reference vs OpenMP kernels: held-out evaluation and repeated runs.
#include <benchmark/benchmark.h>

#include "oltr/harness.hpp"

namespace {

const oltr::SyntheticDataset& corpus() {
  static const auto data = oltr::make_synthetic(oltr::SyntheticSpec{2000, 30, 20, 1, 0.0});
  return data;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto& data = corpus();
  oltr::LinearRanker ranker(data.generator_weights);
  for (auto _ : state)
    benchmark::DoNotOptimize(oltr::evaluate_heldout_serial(ranker, data.dataset.test, 1));
  state.SetItemsProcessed(state.iterations() * data.dataset.test.size());
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto& data = corpus();
  oltr::LinearRanker ranker(data.generator_weights);
  for (auto _ : state)
    benchmark::DoNotOptimize(oltr::evaluate_heldout(ranker, data.dataset.test, 1));
  state.SetItemsProcessed(state.iterations() * data.dataset.test.size());
}

void BM_RunExperiment(benchmark::State& state) {
  oltr::ExperimentConfig c;
  c.algorithm = oltr::Algorithm::pdgd;
  c.dataset.synthetic = oltr::SyntheticSpec{};
  c.dataset.normalize = false;
  c.impressions = 2000;
  c.repeats = 8;
  const auto data = oltr::load_experiment_dataset(c);
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oltr::run_experiment(c, data, workers));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
