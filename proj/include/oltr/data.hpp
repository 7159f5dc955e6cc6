#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "oltr/core.hpp"

namespace oltr {

inline constexpr int kMaxGrade = 4;

struct Query {
  std::string qid;
  FeatureMatrix docs;
  std::vector<int> relevance;

  std::size_t size() const { return docs.rows(); }
  bool operator==(const Query&) const = default;
};

struct Dataset {
  std::vector<Query> train;
  std::vector<Query> test;
  std::size_t feature_dim = 0;

  bool operator==(const Dataset&) const = default;
};

struct LetorFile {
  std::vector<Query> queries;
  std::size_t feature_dim = 0;
};

/// Parses `<grade> qid:<id> <fid>:<val> ... [# comment]` lines. Feature ids
/// are 1-based; absent ids are 0. Throws std::runtime_error naming the line
/// on malformed input.
LetorFile parse_letor(const std::filesystem::path& path);
LetorFile parse_letor(std::istream& in, const std::string& source = "<stream>");

/// Writes queries in the same format, omitting zero-valued features.
void write_letor(std::ostream& out, const std::vector<Query>& queries);
void write_letor(const std::filesystem::path& path, const std::vector<Query>& queries);

/// Per-query, per-feature min-max scaling to [0,1]; constant features map to 0.
std::vector<Query> normalize_query_level(std::vector<Query> queries);

/// Loads a train/test pair and pads both to the larger feature dimension.
Dataset load_dataset(const std::filesystem::path& train, const std::filesystem::path& test,
                     bool normalize);

/// Uniform draw over the training queries.
const Query& sample_query(const Dataset& dataset, Rng& rng);

/// Desk-scale generator. Documents are `latent * w + noise` for a hidden unit
/// vector w; grades bin (w . d + label noise) by dataset-wide quantiles.
/// `num_queries` training queries plus max(1, num_queries / 4) test queries.
struct SyntheticSpec {
  std::size_t num_queries = 200;
  std::size_t docs_per_query = 30;
  std::size_t feature_dim = 20;
  std::uint64_t seed = 1;
  double label_noise = 0.0;

  bool operator==(const SyntheticSpec&) const = default;
};

struct SyntheticDataset {
  Dataset dataset;
  std::vector<double> generator_weights;
};

SyntheticDataset make_synthetic(const SyntheticSpec& spec);
SyntheticDataset make_synthetic(std::size_t num_queries, std::size_t docs_per_query,
                                std::size_t feature_dim, std::uint64_t seed);

/// Parses `queries=50,docs=20,dim=10,seed=1,noise=0.1`; unspecified keys keep defaults.
SyntheticSpec parse_synthetic_spec(const std::string& text);

}  // namespace oltr
