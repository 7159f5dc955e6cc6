#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oltr/config.hpp"
#include "oltr/core.hpp"
#include "oltr/data.hpp"
#include "oltr/eval.hpp"

namespace oltr {

struct RunResult {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  MetricTrace trace;
  double final_ndcg = 0.0;
  LinearRanker final_ranker;

  bool operator==(const RunResult&) const = default;
};

struct BaselineComparison {
  std::string baseline;
  double baseline_mean = 0.0;
  WelchResult welch;
};

struct Summary {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> finals;  // indexed by run_id
  std::vector<BaselineComparison> comparisons;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunResult> runs;  // sorted by run_id
  Summary summary;
};

inline constexpr double kSignificanceLevel = 0.01;
inline constexpr const char* kWorkersEnv = "OLTR_WORKERS";

/// Builds or loads the dataset a config names.
Dataset load_experiment_dataset(const ExperimentConfig& config);

/// Per-run random source seed.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index);

/// One learning run from zero initialization. The result depends only on
/// (config, dataset, run_index).
RunResult run_single(const ExperimentConfig& config, const Dataset& dataset,
                     std::size_t run_index);
RunResult run_single(const ExperimentConfig& config, std::size_t run_index);

/// Runs every repeat on `workers` OpenMP threads (1 runs the plain serial
/// loop) and summarizes final NDCG. Baseline comparisons are attached only
/// by run_experiment(config).
ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset,
                                std::size_t workers);

/// Loads the dataset, resolves the worker count, and compares against every
/// configured baseline output directory.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// OLTR_WORKERS if set, else config.workers, else the OpenMP maximum.
std::size_t resolve_workers(const ExperimentConfig& config);

Summary summarize(const std::vector<RunResult>& runs);

}  // namespace oltr
