#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oltr/rng.hpp"

namespace oltr {

/// Dense row-major matrix of document feature vectors for one query.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim);

  static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }

  double at(std::size_t i, std::size_t f) const { return values_[i * dim_ + f]; }
  double& at(std::size_t i, std::size_t f) { return values_[i * dim_ + f]; }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Linear scoring function f(d) = w . d.
struct LinearRanker {
  std::vector<double> weights;

  LinearRanker() = default;
  explicit LinearRanker(std::vector<double> w) : weights(std::move(w)) {}

  static LinearRanker zeros(std::size_t dim) { return LinearRanker(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const { return weights.size(); }
  bool operator==(const LinearRanker&) const = default;
};

/// Ordered document indices into a query's candidate set, best first.
using Ranking = std::vector<std::size_t>;

double score(const LinearRanker& ranker, std::span<const double> doc);
std::vector<double> score_all(const LinearRanker& ranker, const FeatureMatrix& candidates);

/// Top-min(k, n) documents by descending score. Equal scores are ordered by
/// a uniformly random permutation drawn from `rng` before a stable sort.
Ranking rank_deterministic(const LinearRanker& ranker, const FeatureMatrix& candidates,
                           std::size_t k, Rng& rng);
Ranking rank_by_scores(std::span<const double> scores, std::size_t k, Rng& rng);

/// Plackett-Luce sample of length min(k, n): documents are drawn without
/// replacement with probability proportional to exp(score).
Ranking sample_ranking(const LinearRanker& ranker, const FeatureMatrix& candidates,
                       std::size_t k, Rng& rng);
Ranking sample_ranking_from_scores(std::span<const double> scores, std::size_t k, Rng& rng);

/// Log of the Plackett-Luce probability of producing `ranking` as a prefix.
/// Denominators run over every candidate, displayed or not.
double log_ranking_probability(const LinearRanker& ranker, const Ranking& ranking,
                               const FeatureMatrix& candidates);
double log_ranking_probability_from_scores(std::span<const double> scores,
                                           const Ranking& ranking);

/// exp(f_i) / (exp(f_i) + exp(f_j)), evaluated as a logistic of the score gap.
double pair_preference_probability(const LinearRanker& ranker, std::span<const double> d_i,
                                   std::span<const double> d_j);
double pair_preference_probability_from_scores(double score_i, double score_j);

/// Uniform direction on the unit sphere via normalized Gaussians.
std::vector<double> sample_unit_sphere(std::size_t dim, Rng& rng);

/// Throws std::invalid_argument unless `ranking` has distinct indices below `n`
/// and length at most `n`.
void validate_ranking(const Ranking& ranking, std::size_t n);

}  // namespace oltr
