// Command-line entry point: run experiments, re-plot, compare, generate data.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "oltr/config.hpp"
#include "oltr/data.hpp"
#include "oltr/harness.hpp"
#include "oltr/output.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Online learning to rank simulator (DBGD / PDGD)"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every repeat of an experiment config");
  run->add_option("config", config_path, "JSON experiment config")->required();
  std::string out_override;
  run->add_option("-o,--out", out_override, "Override the config's output_dir");

  std::string plot_dir;
  auto* plot = app.add_subcommand("plot", "Rebuild curve.svg from trace.csv");
  plot->add_option("out_dir", plot_dir)->required();

  std::string dir_a, dir_b;
  auto* compare = app.add_subcommand("compare", "Welch t-test on final NDCG of two runs");
  compare->add_option("out_dir_a", dir_a)->required();
  compare->add_option("out_dir_b", dir_b)->required();

  std::string synth_spec, synth_out;
  auto* synth = app.add_subcommand(
      "synth", "Write a synthetic dataset as <out>/train.txt and <out>/test.txt (LETOR format)");
  synth->add_option("spec", synth_spec, "e.g. queries=200,docs=30,dim=20,seed=1,noise=0")
      ->required();
  synth->add_option("out_path", synth_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = oltr::load_config(config_path);
      if (!out_override.empty()) config.output_dir = out_override;
      const auto workers = oltr::resolve_workers(config);
      std::fprintf(stderr, "%s: %s, %zu repeats x %zu impressions on %zu workers\n",
                   config.name.c_str(), oltr::to_string(config.algorithm).c_str(),
                   config.repeats, config.impressions, workers);
      auto result = oltr::run_experiment(config);
      oltr::emit_outputs(result, config.output_dir);
      std::printf("mean NDCG@10 %.4f (std %.4f) over %zu runs -> %s\n", result.summary.mean,
                  result.summary.std, result.runs.size(), config.output_dir.c_str());
      for (const auto& c : result.summary.comparisons)
        std::printf("  vs %s: baseline mean %.4f, t=%.3f, p=%.3g%s\n", c.baseline.c_str(),
                    c.baseline_mean, c.welch.t, c.welch.p,
                    c.welch.p < oltr::kSignificanceLevel ? " (significant)" : "");
    } else if (*plot) {
      oltr::replot(plot_dir);
      std::printf("%s\n", (fs::path(plot_dir) / "curve.svg").c_str());
    } else if (*compare) {
      std::cout << oltr::compare_output_dirs(dir_a, dir_b).dump(2) << '\n';
    } else if (*synth) {
      const auto spec = oltr::parse_synthetic_spec(synth_spec);
      const auto data = oltr::make_synthetic(spec);
      fs::create_directories(synth_out);
      oltr::write_letor(fs::path(synth_out) / "train.txt", data.dataset.train);
      oltr::write_letor(fs::path(synth_out) / "test.txt", data.dataset.test);
      std::printf("%zu train / %zu test queries, %zu features -> %s\n",
                  data.dataset.train.size(), data.dataset.test.size(), data.dataset.feature_dim,
                  synth_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
