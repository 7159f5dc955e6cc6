#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oltr/click_sim.hpp"
#include "oltr/data.hpp"
#include "oltr/dbgd.hpp"

namespace oltr {

enum class Algorithm { dbgd, pdgd };

Algorithm algorithm_from_name(const std::string& name);
std::string to_string(Algorithm algorithm);

inline constexpr double kPdgdLearningRate = 0.1;
inline constexpr double kDbgdLearningRate = 0.001;

struct DatasetSource {
  std::optional<SyntheticSpec> synthetic;
  std::filesystem::path train;
  std::filesystem::path test;
  bool normalize = true;
};

/// One experimental condition. Defaults are the standard simulation setup:
/// 10^6 impressions, 125 repeats, top-10 display, zero initialization.
struct ExperimentConfig {
  std::string name = "experiment";
  Algorithm algorithm = Algorithm::pdgd;
  Comparator comparator = Comparator::probabilistic;
  std::string click_model = "perfect";
  DatasetSource dataset;
  std::size_t impressions = 1'000'000;
  std::size_t repeats = 125;
  std::size_t k = 10;
  std::optional<double> learning_rate;
  double sphere_radius = 1.0;
  double tau = kDefaultTau;
  std::uint64_t base_seed = 0;
  std::size_t checkpoint_count = 30;
  std::vector<std::size_t> checkpoints;  // explicit schedule; overrides checkpoint_count
  std::filesystem::path output_dir = "out";
  std::vector<std::filesystem::path> baselines;
  std::size_t workers = 0;  // 0: OpenMP default

  double effective_learning_rate() const;
  ClickModelSpec click_spec() const { return ClickModelSpec::from_name(click_model); }
  std::vector<std::size_t> schedule() const;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Relative dataset, baseline and output paths resolve against `base_dir`.
/// Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);

/// FNV-1a over the canonical JSON of every field that affects results
/// (name, output location, baselines and worker count excluded).
std::uint64_t config_hash(const ExperimentConfig& config);

/// 0, then `count` log-spaced impression counts ending exactly at `horizon`,
/// de-duplicated.
std::vector<std::size_t> log_checkpoint_schedule(std::size_t horizon, std::size_t count);

}  // namespace oltr
