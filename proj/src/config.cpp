#include "oltr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace oltr {

using nlohmann::json;

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "dbgd") return Algorithm::dbgd;
  if (name == "pdgd") return Algorithm::pdgd;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::dbgd ? "dbgd" : "pdgd";
}

double ExperimentConfig::effective_learning_rate() const {
  if (learning_rate) return *learning_rate;
  return algorithm == Algorithm::pdgd ? kPdgdLearningRate : kDbgdLearningRate;
}

std::vector<std::size_t> log_checkpoint_schedule(std::size_t horizon, std::size_t count) {
  if (horizon == 0) throw std::invalid_argument("checkpoint schedule: horizon must be >= 1");
  if (count == 0) throw std::invalid_argument("checkpoint schedule: count must be >= 1");
  std::vector<std::size_t> out{0};
  const double log_h = std::log(static_cast<double>(horizon));
  for (std::size_t i = 1; i <= count; ++i) {
    const double x = std::exp(log_h * static_cast<double>(i) / static_cast<double>(count));
    auto point = static_cast<std::size_t>(std::llround(x));
    point = std::clamp<std::size_t>(point, 1, horizon);
    if (point > out.back()) out.push_back(point);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

std::vector<std::size_t> ExperimentConfig::schedule() const {
  if (checkpoints.empty()) return log_checkpoint_schedule(impressions, checkpoint_count);
  return checkpoints;
}

void ExperimentConfig::validate() const {
  if (impressions < 1) throw std::invalid_argument("config: impressions must be >= 1");
  if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (!(effective_learning_rate() > 0.0))
    throw std::invalid_argument("config: learning_rate must be > 0");
  if (!(sphere_radius > 0.0)) throw std::invalid_argument("config: sphere_radius must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("config: tau must be > 0");
  (void)click_spec();
  if (!dataset.synthetic && (dataset.train.empty() || dataset.test.empty()))
    throw std::invalid_argument("config: dataset needs 'synthetic' or both 'train' and 'test'");
  if (!checkpoints.empty()) {
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
      if (checkpoints[i] <= checkpoints[i - 1])
        throw std::invalid_argument("config: checkpoints must strictly increase");
    if (checkpoints.back() > impressions)
      throw std::invalid_argument("config: checkpoint beyond impressions");
  } else if (checkpoint_count < 1) {
    throw std::invalid_argument("config: checkpoint_count must be >= 1");
  }
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: bad type for '") + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(j,
                 {"name", "algorithm", "comparator", "click_model", "dataset", "impressions",
                  "repeats", "k", "learning_rate", "sphere_radius", "tau", "base_seed",
                  "checkpoint_count", "checkpoints", "output_dir", "baselines", "workers"},
                 "config");
  ExperimentConfig c;
  c.name = get_or<std::string>(j, "name", c.name);
  c.algorithm = algorithm_from_name(get_or<std::string>(j, "algorithm", "pdgd"));
  c.comparator = comparator_from_name(get_or<std::string>(j, "comparator", "probabilistic"));
  c.click_model = get_or<std::string>(j, "click_model", c.click_model);
  c.impressions = get_or<std::size_t>(j, "impressions", c.impressions);
  c.repeats = get_or<std::size_t>(j, "repeats", c.repeats);
  c.k = get_or<std::size_t>(j, "k", c.k);
  if (j.contains("learning_rate")) c.learning_rate = get_or<double>(j, "learning_rate", 0.0);
  c.sphere_radius = get_or<double>(j, "sphere_radius", c.sphere_radius);
  c.tau = get_or<double>(j, "tau", c.tau);
  c.base_seed = get_or<std::uint64_t>(j, "base_seed", c.base_seed);
  c.checkpoint_count = get_or<std::size_t>(j, "checkpoint_count", c.checkpoint_count);
  c.checkpoints = get_or<std::vector<std::size_t>>(j, "checkpoints", {});
  c.output_dir = resolve(base_dir, get_or<std::string>(j, "output_dir", "out"));
  for (const auto& b : get_or<std::vector<std::string>>(j, "baselines", {}))
    c.baselines.push_back(resolve(base_dir, b));
  c.workers = get_or<std::size_t>(j, "workers", 0);

  if (!j.contains("dataset")) throw std::invalid_argument("config: missing 'dataset'");
  const auto& d = j.at("dataset");
  if (!d.is_object()) throw std::invalid_argument("config: 'dataset' must be an object");
  reject_unknown(d, {"train", "test", "normalize", "synthetic"}, "dataset");
  if (d.contains("synthetic")) {
    const auto& s = d.at("synthetic");
    reject_unknown(s, {"queries", "docs_per_query", "feature_dim", "seed", "label_noise"},
                   "dataset.synthetic");
    SyntheticSpec spec;
    spec.num_queries = get_or<std::size_t>(s, "queries", spec.num_queries);
    spec.docs_per_query = get_or<std::size_t>(s, "docs_per_query", spec.docs_per_query);
    spec.feature_dim = get_or<std::size_t>(s, "feature_dim", spec.feature_dim);
    spec.seed = get_or<std::uint64_t>(s, "seed", spec.seed);
    spec.label_noise = get_or<double>(s, "label_noise", spec.label_noise);
    c.dataset.synthetic = spec;
  } else {
    c.dataset.train = resolve(base_dir, get_or<std::string>(d, "train", ""));
    c.dataset.test = resolve(base_dir, get_or<std::string>(d, "test", ""));
  }
  c.dataset.normalize = get_or<bool>(d, "normalize", !c.dataset.synthetic.has_value());

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["algorithm"] = to_string(c.algorithm);
  if (c.algorithm == Algorithm::dbgd) {
    j["comparator"] = to_string(c.comparator);
    j["sphere_radius"] = c.sphere_radius;
    j["tau"] = c.tau;
  }
  j["click_model"] = c.click_model;
  json d;
  if (c.dataset.synthetic) {
    const auto& s = *c.dataset.synthetic;
    d["synthetic"] = {{"queries", s.num_queries},
                      {"docs_per_query", s.docs_per_query},
                      {"feature_dim", s.feature_dim},
                      {"seed", s.seed},
                      {"label_noise", s.label_noise}};
  } else {
    d["train"] = c.dataset.train.string();
    d["test"] = c.dataset.test.string();
  }
  d["normalize"] = c.dataset.normalize;
  j["dataset"] = d;
  j["impressions"] = c.impressions;
  j["repeats"] = c.repeats;
  j["k"] = c.k;
  j["learning_rate"] = c.effective_learning_rate();
  j["base_seed"] = c.base_seed;
  j["checkpoints"] = c.schedule();
  return j;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  auto j = to_json(config);
  j.erase("name");
  const std::string canonical = j.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace oltr
