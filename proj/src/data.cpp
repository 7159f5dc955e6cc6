#include "oltr/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace oltr {
namespace {

struct SparseDoc {
  int grade = 0;
  std::vector<std::pair<std::size_t, double>> features;
};

[[noreturn]] void fail(const std::string& source, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

LetorFile parse_letor(std::istream& in, const std::string& source) {
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<SparseDoc>> groups;
  std::size_t max_fid = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    auto tokens = split_ws(body);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) fail(source, line_no, "expected '<grade> qid:<id> ...'");

    SparseDoc doc;
    if (!parse_number(tokens[0], doc.grade)) fail(source, line_no, "grade is not an integer");
    if (doc.grade < 0 || doc.grade > kMaxGrade)
      fail(source, line_no, "grade " + std::to_string(doc.grade) + " outside [0,4]");
    if (tokens[1].substr(0, 4) != "qid:" || tokens[1].size() == 4)
      fail(source, line_no, "missing qid");
    std::string qid(tokens[1].substr(4));

    for (std::size_t t = 2; t < tokens.size(); ++t) {
      auto tok = tokens[t];
      auto colon = tok.find(':');
      if (colon == std::string_view::npos) fail(source, line_no, "feature without ':'");
      std::size_t fid = 0;
      double value = 0.0;
      if (!parse_number(tok.substr(0, colon), fid) || fid == 0)
        fail(source, line_no, "bad feature id '" + std::string(tok.substr(0, colon)) + "'");
      if (!parse_number(tok.substr(colon + 1), value) || !std::isfinite(value))
        fail(source, line_no, "bad feature value '" + std::string(tok.substr(colon + 1)) + "'");
      for (const auto& [seen, _] : doc.features)
        if (seen == fid) fail(source, line_no, "feature " + std::to_string(fid) + " repeated");
      doc.features.emplace_back(fid, value);
      max_fid = std::max(max_fid, fid);
    }

    auto [it, inserted] = groups.try_emplace(qid);
    if (inserted) order.push_back(qid);
    it->second.push_back(std::move(doc));
  }
  if (order.empty()) throw std::runtime_error(source + ": no documents");

  LetorFile out;
  out.feature_dim = max_fid;
  out.queries.reserve(order.size());
  for (const auto& qid : order) {
    const auto& docs = groups.at(qid);
    Query q;
    q.qid = qid;
    q.docs = FeatureMatrix(docs.size(), max_fid);
    q.relevance.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      q.relevance.push_back(docs[i].grade);
      for (const auto& [fid, value] : docs[i].features) q.docs.at(i, fid - 1) = value;
    }
    out.queries.push_back(std::move(q));
  }
  return out;
}

LetorFile parse_letor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_letor(in, path.string());
}

void write_letor(std::ostream& out, const std::vector<Query>& queries) {
  out << std::setprecision(17);
  for (const auto& q : queries) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      out << q.relevance[i] << " qid:" << q.qid;
      for (std::size_t f = 0; f < q.docs.dim(); ++f)
        if (q.docs.at(i, f) != 0.0) out << ' ' << (f + 1) << ':' << q.docs.at(i, f);
      out << '\n';
    }
  }
}

void write_letor(const std::filesystem::path& path, const std::vector<Query>& queries) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_letor(out, queries);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Query> normalize_query_level(std::vector<Query> queries) {
  for (auto& q : queries) {
    for (std::size_t f = 0; f < q.docs.dim(); ++f) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t i = 0; i < q.size(); ++i) {
        lo = std::min(lo, q.docs.at(i, f));
        hi = std::max(hi, q.docs.at(i, f));
      }
      const double range = hi - lo;
      for (std::size_t i = 0; i < q.size(); ++i) {
        double& v = q.docs.at(i, f);
        v = range > 0.0 ? std::clamp((v - lo) / range, 0.0, 1.0) : 0.0;
      }
    }
  }
  return queries;
}

namespace {

void pad_to(std::vector<Query>& queries, std::size_t dim) {
  for (auto& q : queries) {
    if (q.docs.dim() == dim) continue;
    FeatureMatrix padded(q.size(), dim);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t f = 0; f < q.docs.dim(); ++f) padded.at(i, f) = q.docs.at(i, f);
    q.docs = std::move(padded);
  }
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& train, const std::filesystem::path& test,
                     bool normalize) {
  auto tr = parse_letor(train);
  auto te = parse_letor(test);
  Dataset ds;
  ds.feature_dim = std::max(tr.feature_dim, te.feature_dim);
  ds.train = std::move(tr.queries);
  ds.test = std::move(te.queries);
  pad_to(ds.train, ds.feature_dim);
  pad_to(ds.test, ds.feature_dim);
  if (normalize) {
    ds.train = normalize_query_level(std::move(ds.train));
    ds.test = normalize_query_level(std::move(ds.test));
  }
  return ds;
}

const Query& sample_query(const Dataset& dataset, Rng& rng) {
  if (dataset.train.empty()) throw std::invalid_argument("sample_query: no training queries");
  std::uniform_int_distribution<std::size_t> pick(0, dataset.train.size() - 1);
  return dataset.train[pick(rng)];
}

SyntheticDataset make_synthetic(const SyntheticSpec& spec) {
  if (spec.num_queries == 0 || spec.docs_per_query == 0 || spec.feature_dim == 0)
    throw std::invalid_argument("make_synthetic: sizes must be positive");
  if (!(spec.label_noise >= 0.0)) throw std::invalid_argument("make_synthetic: negative noise");

  Rng rng(derive_seed(spec.seed, 0x5EEDULL));
  std::normal_distribution<double> gauss(0.0, 1.0);

  SyntheticDataset out;
  out.generator_weights = sample_unit_sphere(spec.feature_dim, rng);
  const auto& w = out.generator_weights;

  const std::size_t n_test = std::max<std::size_t>(1, spec.num_queries / 4);
  const std::size_t n_total = spec.num_queries + n_test;

  std::vector<Query> queries(n_total);
  std::vector<double> latent_scores;
  latent_scores.reserve(n_total * spec.docs_per_query);
  for (std::size_t q = 0; q < n_total; ++q) {
    queries[q].qid = std::to_string(q + 1);
    queries[q].docs = FeatureMatrix(spec.docs_per_query, spec.feature_dim);
    for (std::size_t i = 0; i < spec.docs_per_query; ++i) {
      const double latent = gauss(rng);
      auto row = queries[q].docs.row(i);
      double s = 0.0;
      for (std::size_t f = 0; f < spec.feature_dim; ++f) {
        row[f] = latent * w[f] + gauss(rng);
        s += w[f] * row[f];
      }
      latent_scores.push_back(s + spec.label_noise * gauss(rng));
    }
  }

  // Grades are the dataset-wide quintiles of the generating score.
  constexpr double kCutoffs[kMaxGrade] = {0.2, 0.4, 0.6, 0.8};
  std::vector<double> sorted = latent_scores;
  std::sort(sorted.begin(), sorted.end());
  double thresholds[kMaxGrade];
  for (int g = 0; g < kMaxGrade; ++g) {
    auto idx = static_cast<std::size_t>(kCutoffs[g] * static_cast<double>(sorted.size()));
    thresholds[g] = sorted[std::min(idx, sorted.size() - 1)];
  }
  std::size_t cursor = 0;
  for (auto& q : queries) {
    q.relevance.resize(spec.docs_per_query);
    for (auto& grade : q.relevance) {
      const double s = latent_scores[cursor++];
      grade = 0;
      while (grade < kMaxGrade && s >= thresholds[grade]) ++grade;
    }
  }

  out.dataset.feature_dim = spec.feature_dim;
  out.dataset.train.assign(std::make_move_iterator(queries.begin()),
                           std::make_move_iterator(queries.begin() + spec.num_queries));
  out.dataset.test.assign(std::make_move_iterator(queries.begin() + spec.num_queries),
                          std::make_move_iterator(queries.end()));
  return out;
}

SyntheticDataset make_synthetic(std::size_t num_queries, std::size_t docs_per_query,
                                std::size_t feature_dim, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.num_queries = num_queries;
  spec.docs_per_query = docs_per_query;
  spec.feature_dim = feature_dim;
  spec.seed = seed;
  return make_synthetic(spec);
}

SyntheticSpec parse_synthetic_spec(const std::string& text) {
  SyntheticSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("synthetic spec: expected key=value");
    const std::string key = item.substr(0, eq);
    const std::string_view value = std::string_view(item).substr(eq + 1);
    bool ok = false;
    if (key == "queries") ok = parse_number(value, spec.num_queries);
    else if (key == "docs") ok = parse_number(value, spec.docs_per_query);
    else if (key == "dim") ok = parse_number(value, spec.feature_dim);
    else if (key == "seed") ok = parse_number(value, spec.seed);
    else if (key == "noise") ok = parse_number(value, spec.label_noise);
    else throw std::invalid_argument("synthetic spec: unknown key '" + key + "'");
    if (!ok) throw std::invalid_argument("synthetic spec: bad value for '" + key + "'");
  }
  if (spec.num_queries == 0 || spec.docs_per_query == 0 || spec.feature_dim == 0)
    throw std::invalid_argument("synthetic spec: sizes must be positive");
  return spec;
}

}  // namespace oltr
