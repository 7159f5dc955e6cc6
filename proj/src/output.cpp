#include "oltr/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oltr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_trace_csv(const fs::path& path, const std::vector<RunResult>& runs) {
  std::ostringstream out;
  out << "run_id,seed,impressions,ndcg10\n";
  for (const auto& run : runs)
    for (const auto& cp : run.trace.checkpoints())
      out << run.run_id << ',' << run.seed << ',' << cp.impressions << ','
          << fmt_double(cp.ndcg) << '\n';
  write_file(path, out.str());
}

std::vector<TraceRow> read_trace_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "run_id,seed,impressions,ndcg10")
    throw std::runtime_error(path.string() + ": unexpected header");
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    TraceRow row;
    unsigned long long run_id = 0, seed = 0, impressions = 0;
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%llu,%llu,%llu,%lf%n", &run_id, &seed, &impressions,
                    &row.ndcg10, &consumed) != 4 ||
        static_cast<std::size_t>(consumed) != line.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    row.run_id = run_id;
    row.seed = seed;
    row.impressions = impressions;
    rows.push_back(row);
  }
  return rows;
}

std::vector<CurvePoint> aggregate_curve(const std::vector<TraceRow>& rows) {
  std::map<std::size_t, std::vector<double>> by_checkpoint;
  for (const auto& r : rows) by_checkpoint[r.impressions].push_back(r.ndcg10);
  std::vector<CurvePoint> curve;
  for (const auto& [impressions, values] : by_checkpoint)
    curve.push_back({impressions, mean(values), sample_std(values), values.size()});
  return curve;
}

std::string render_curve_svg(const std::vector<CurvePoint>& curve, const std::string& title) {
  constexpr double kWidth = 800, kHeight = 480;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_max = 1.0, y_lo = 1.0, y_hi = 0.0;
  for (const auto& p : curve) {
    x_max = std::max(x_max, std::log10(1.0 + static_cast<double>(p.impressions)));
    y_lo = std::min(y_lo, p.mean - p.std);
    y_hi = std::max(y_hi, p.mean + p.std);
  }
  if (curve.empty()) y_lo = 0.0, y_hi = 1.0;
  y_lo = std::max(0.0, std::floor(y_lo * 20.0) / 20.0);
  y_hi = std::min(1.0, std::ceil(y_hi * 20.0) / 20.0);
  if (y_hi - y_lo < 0.05) y_hi = std::min(1.0, y_lo + 0.05), y_lo = y_hi - 0.05;

  auto px = [&](std::size_t impressions) {
    return kLeft + plot_w * std::log10(1.0 + static_cast<double>(impressions)) / x_max;
  };
  auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << escape_xml(title) << "</text>\n";

  // Axes, y grid every 0.05, x ticks at powers of ten.
  svg << "<g stroke=\"#999\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double v = y_lo; v <= y_hi + 1e-9; v += 0.05) {
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << kWidth - kRight << "\" y1=\"" << fmt_px(py(v))
        << "\" y2=\"" << fmt_px(py(v)) << "\" stroke=\"#eee\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt_px(py(v) + 4)
        << "\" text-anchor=\"end\" stroke=\"none\">" << fmt_px(v) << "</text>\n";
  }
  for (std::size_t tick = 1; std::log10(1.0 + static_cast<double>(tick)) <= x_max + 1e-9;
       tick *= 10) {
    svg << "<text x=\"" << fmt_px(px(tick)) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" stroke=\"none\">" << tick << "</text>\n";
    if (tick > std::size_t{1} << 60) break;
  }
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
      << "\" y2=\"" << kHeight - kBottom << "\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\" stroke=\"none\" font-size=\"13\">impressions</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" stroke=\"none\""
      << " font-size=\"13\" transform=\"rotate(-90 18 " << kTop + plot_h / 2
      << ")\">NDCG@10 (held-out)</text>\n";
  svg << "</g>\n";

  if (!curve.empty()) {
    svg << "<polygon class=\"std-band\" fill=\"#1f77b4\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const auto& p : curve)
      svg << fmt_px(px(p.impressions)) << ',' << fmt_px(py(std::min(1.0, p.mean + p.std))) << ' ';
    for (auto it = curve.rbegin(); it != curve.rend(); ++it)
      svg << fmt_px(px(it->impressions)) << ',' << fmt_px(py(std::max(0.0, it->mean - it->std)))
          << ' ';
    svg << "\"/>\n";
    svg << "<polyline class=\"mean\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (const auto& p : curve) svg << fmt_px(px(p.impressions)) << ',' << fmt_px(py(p.mean)) << ' ';
    svg << "\"/>\n";
    for (const auto& p : curve)
      svg << "<circle class=\"checkpoint\" cx=\"" << fmt_px(px(p.impressions)) << "\" cy=\""
          << fmt_px(py(p.mean)) << "\" r=\"2.5\" fill=\"#1f77b4\" data-impressions=\""
          << p.impressions << "\" data-mean=\"" << fmt_double(p.mean) << "\" data-std=\""
          << fmt_double(p.std) << "\" data-runs=\"" << p.runs << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

json summary_json(const ExperimentResult& result) {
  json j;
  j["config"] = to_json(result.config);
  j["config_hash"] = hex64(config_hash(result.config));
  j["runs"] = result.runs.size();
  j["mean_final_ndcg"] = result.summary.mean;
  j["std_final_ndcg"] = result.summary.std;
  j["final_ndcg"] = result.summary.finals;
  json seeds = json::array();
  for (const auto& r : result.runs) seeds.push_back(r.seed);
  j["seeds"] = seeds;
  j["checkpoint_schedule"] = {
      {"kind", result.config.checkpoints.empty() ? "log_spaced" : "explicit"},
      {"points", result.config.schedule()}};
  json comparisons = json::array();
  for (const auto& c : result.summary.comparisons)
    comparisons.push_back({{"baseline", c.baseline},
                           {"baseline_mean", c.baseline_mean},
                           {"t", c.welch.t},
                           {"df", c.welch.df},
                           {"p", c.welch.p},
                           {"significant", c.welch.p < kSignificanceLevel}});
  j["significance"] = {{"test", "welch_two_sided"},
                       {"alpha", kSignificanceLevel},
                       {"comparisons", comparisons}};
  return j;
}

void emit_outputs(const ExperimentResult& result, const fs::path& out_dir) {
  if (result.runs.empty()) throw std::invalid_argument("emit_outputs: no runs");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  write_trace_csv(out_dir / "trace.csv", result.runs);
  write_file(out_dir / "summary.json", summary_json(result).dump(2) + "\n");
  std::vector<TraceRow> rows;
  for (const auto& run : result.runs)
    for (const auto& cp : run.trace.checkpoints())
      rows.push_back({run.run_id, run.seed, cp.impressions, cp.ndcg});
  write_file(out_dir / "curve.svg", render_curve_svg(aggregate_curve(rows), result.config.name));
}

void replot(const fs::path& out_dir) {
  auto rows = read_trace_csv(out_dir / "trace.csv");
  std::string title = out_dir.filename().string();
  if (std::ifstream in(out_dir / "summary.json"); in) {
    try {
      title = json::parse(in).at("config").at("name").get<std::string>();
    } catch (const json::exception&) {
    }
  }
  write_file(out_dir / "curve.svg", render_curve_svg(aggregate_curve(rows), title));
}

std::vector<double> read_summary_finals(const fs::path& dir) {
  std::ifstream in(dir / "summary.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "summary.json").string());
  try {
    return json::parse(in).at("final_ndcg").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::runtime_error((dir / "summary.json").string() + ": " + e.what());
  }
}

json compare_output_dirs(const fs::path& a, const fs::path& b) {
  const auto fa = read_summary_finals(a);
  const auto fb = read_summary_finals(b);
  const auto w = welch_t_test(fa, fb);
  return {{"a", a.string()},
          {"b", b.string()},
          {"mean_a", mean(fa)},
          {"mean_b", mean(fb)},
          {"n_a", fa.size()},
          {"n_b", fb.size()},
          {"test", "welch_two_sided"},
          {"t", w.t},
          {"df", w.df},
          {"p", w.p},
          {"significant", w.p < kSignificanceLevel}};
}

}  // namespace oltr
