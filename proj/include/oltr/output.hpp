#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "oltr/harness.hpp"

namespace oltr {

/// One row of trace.csv: `run_id,seed,impressions,ndcg10`.
struct TraceRow {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  std::size_t impressions = 0;
  double ndcg10 = 0.0;
};

/// Across-run statistics at one checkpoint.
struct CurvePoint {
  std::size_t impressions = 0;
  double mean = 0.0;
  double std = 0.0;
  std::size_t runs = 0;
};

void write_trace_csv(const std::filesystem::path& path, const std::vector<RunResult>& runs);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// Groups rows by impression count (ascending); std is the sample std.
std::vector<CurvePoint> aggregate_curve(const std::vector<TraceRow>& rows);

/// Learning curve: mean NDCG@10 over a +-1 std band, x on a log(1 + n) axis.
/// Each checkpoint is also a marker carrying data-impressions, data-mean and
/// data-std attributes.
std::string render_curve_svg(const std::vector<CurvePoint>& curve, const std::string& title);

nlohmann::json summary_json(const ExperimentResult& result);

/// Writes trace.csv, summary.json and curve.svg, creating `out_dir` if needed.
void emit_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// Rebuilds curve.svg from an existing trace.csv.
void replot(const std::filesystem::path& out_dir);

/// Per-run final NDCG values recorded in `<dir>/summary.json`.
std::vector<double> read_summary_finals(const std::filesystem::path& dir);

/// Welch test of final NDCG between two output directories.
nlohmann::json compare_output_dirs(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace oltr
