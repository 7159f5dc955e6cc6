#include "oltr/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <stdexcept>

#include <omp.h>

#include "oltr/dbgd.hpp"
#include "oltr/output.hpp"
#include "oltr/pdgd.hpp"

namespace oltr {

Dataset load_experiment_dataset(const ExperimentConfig& config) {
  Dataset ds;
  if (config.dataset.synthetic) {
    ds = make_synthetic(*config.dataset.synthetic).dataset;
    if (config.dataset.normalize) {
      ds.train = normalize_query_level(std::move(ds.train));
      ds.test = normalize_query_level(std::move(ds.test));
    }
  } else {
    ds = load_dataset(config.dataset.train, config.dataset.test, config.dataset.normalize);
  }
  if (ds.train.empty() || ds.test.empty())
    throw std::runtime_error("dataset needs non-empty train and test splits");
  return ds;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) {
  return derive_seed(base_seed, run_index);
}

RunResult run_single(const ExperimentConfig& config, const Dataset& dataset,
                     std::size_t run_index) {
  config.validate();
  const auto schedule = config.schedule();
  const auto click_model = config.click_spec();

  RunResult result;
  result.run_id = run_index;
  result.seed = run_seed(config.base_seed, run_index);
  result.config_hash = config_hash(config);
  const std::uint64_t eval_seed = derive_seed(result.seed, 0xE7A1ULL);

  Rng rng(result.seed);
  const auto zero = LinearRanker::zeros(dataset.feature_dim);
  DbgdState dbgd{zero, config.effective_learning_rate(), config.sphere_radius, config.comparator,
                 config.tau};
  PdgdState pdgd{zero, config.effective_learning_rate()};
  auto current = [&]() -> const LinearRanker& {
    return config.algorithm == Algorithm::dbgd ? dbgd.ranker : pdgd.ranker;
  };

  std::size_t next = 0;
  auto checkpoint = [&](std::size_t t) {
    if (next < schedule.size() && schedule[next] == t) {
      result.trace.append(t, evaluate_heldout(current(), dataset.test, eval_seed, kMetricCutoff));
      ++next;
    }
  };

  checkpoint(0);
  for (std::size_t t = 1; t <= config.impressions; ++t) {
    const Query& q = sample_query(dataset, rng);
    if (config.algorithm == Algorithm::dbgd)
      dbgd = dbgd_step(dbgd, q, click_model, config.k, rng);
    else
      pdgd = pdgd_step(pdgd, q, click_model, config.k, rng);
    checkpoint(t);
  }
  result.final_ranker = current();
  result.final_ndcg = result.trace.empty() ? 0.0 : result.trace.back().ndcg;
  if (result.trace.empty() || result.trace.back().impressions != config.impressions)
    result.final_ndcg = evaluate_heldout(current(), dataset.test, eval_seed, kMetricCutoff);
  return result;
}

RunResult run_single(const ExperimentConfig& config, std::size_t run_index) {
  return run_single(config, load_experiment_dataset(config), run_index);
}

Summary summarize(const std::vector<RunResult>& runs) {
  Summary s;
  s.finals.reserve(runs.size());
  for (const auto& r : runs) s.finals.push_back(r.final_ndcg);
  s.mean = mean(s.finals);
  s.std = sample_std(s.finals);
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset,
                                std::size_t workers) {
  config.validate();
  ExperimentResult out;
  out.config = config;
  out.runs.resize(config.repeats);

  if (workers <= 1) {
    for (std::size_t i = 0; i < config.repeats; ++i) out.runs[i] = run_single(config, dataset, i);
  } else {
    std::vector<std::exception_ptr> errors(config.repeats);
    const auto n = static_cast<std::ptrdiff_t>(config.repeats);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(workers))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      try {
        out.runs[idx] = run_single(config, dataset, idx);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  out.summary = summarize(out.runs);
  return out;
}

std::size_t resolve_workers(const ExperimentConfig& config) {
  if (const char* env = std::getenv(kWorkersEnv); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1)
      throw std::invalid_argument(std::string(kWorkersEnv) + " must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  if (config.workers > 0) return config.workers;
  return static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto dataset = load_experiment_dataset(config);
  auto result = run_experiment(config, dataset, resolve_workers(config));
  for (const auto& dir : config.baselines) {
    const auto baseline = read_summary_finals(dir);
    BaselineComparison cmp;
    cmp.baseline = dir.string();
    cmp.baseline_mean = mean(baseline);
    cmp.welch = welch_t_test(result.summary.finals, baseline);
    result.summary.comparisons.push_back(cmp);
  }
  return result;
}

}  // namespace oltr
