#include "oltr/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oltr {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim)
    : rows_(rows), dim_(dim), values_(rows * dim, 0.0) {}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  FeatureMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.dim_)
      throw std::invalid_argument("FeatureMatrix: ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

double score(const LinearRanker& ranker, std::span<const double> doc) {
  if (doc.size() != ranker.dim())
    throw std::invalid_argument("score: ranker has dimension " + std::to_string(ranker.dim()) +
                                " but document has " + std::to_string(doc.size()));
  return std::inner_product(doc.begin(), doc.end(), ranker.weights.begin(), 0.0);
}

std::vector<double> score_all(const LinearRanker& ranker, const FeatureMatrix& candidates) {
  if (candidates.dim() != ranker.dim() && !candidates.empty())
    throw std::invalid_argument("score_all: dimension mismatch");
  std::vector<double> out(candidates.rows());
  for (std::size_t i = 0; i < candidates.rows(); ++i) {
    auto d = candidates.row(i);
    out[i] = std::inner_product(d.begin(), d.end(), ranker.weights.begin(), 0.0);
  }
  return out;
}

Ranking rank_by_scores(std::span<const double> scores, std::size_t k, Rng& rng) {
  if (scores.empty()) throw std::invalid_argument("rank: empty candidate set");
  if (k == 0) throw std::invalid_argument("rank: k must be positive");
  Ranking order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

Ranking rank_deterministic(const LinearRanker& ranker, const FeatureMatrix& candidates,
                           std::size_t k, Rng& rng) {
  if (candidates.empty()) throw std::invalid_argument("rank: empty candidate set");
  auto scores = score_all(ranker, candidates);
  return rank_by_scores(scores, k, rng);
}

Ranking sample_ranking_from_scores(std::span<const double> scores, std::size_t k, Rng& rng) {
  if (scores.empty()) throw std::invalid_argument("sample_ranking: empty candidate set");
  if (k == 0) throw std::invalid_argument("sample_ranking: k must be positive");
  const std::size_t n = scores.size();
  const std::size_t len = std::min(k, n);

  // Remaining documents are kept in the tail of `pool`; the max is recomputed
  // per position so exp never underflows for the remaining set.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<double> weights(n);
  Ranking out;
  out.reserve(len);
  for (std::size_t pos = 0; pos < len; ++pos) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = pos; i < n; ++i) top = std::max(top, scores[pool[i]]);
    double total = 0.0;
    for (std::size_t i = pos; i < n; ++i) {
      weights[i] = std::exp(scores[pool[i]] - top);
      total += weights[i];
    }
    double u = uniform01(rng) * total;
    std::size_t pick = n - 1;
    for (std::size_t i = pos; i < n; ++i) {
      u -= weights[i];
      if (u < 0.0) {
        pick = i;
        break;
      }
    }
    std::swap(pool[pos], pool[pick]);
    out.push_back(pool[pos]);
  }
  return out;
}

Ranking sample_ranking(const LinearRanker& ranker, const FeatureMatrix& candidates,
                       std::size_t k, Rng& rng) {
  if (candidates.empty()) throw std::invalid_argument("sample_ranking: empty candidate set");
  auto scores = score_all(ranker, candidates);
  return sample_ranking_from_scores(scores, k, rng);
}

void validate_ranking(const Ranking& ranking, std::size_t n) {
  if (ranking.size() > n) throw std::invalid_argument("ranking longer than candidate set");
  std::vector<bool> seen(n, false);
  for (auto idx : ranking) {
    if (idx >= n)
      throw std::invalid_argument("ranking index " + std::to_string(idx) + " out of range");
    if (seen[idx])
      throw std::invalid_argument("ranking index " + std::to_string(idx) + " repeated");
    seen[idx] = true;
  }
}

double log_ranking_probability_from_scores(std::span<const double> scores,
                                           const Ranking& ranking) {
  if (ranking.empty()) throw std::invalid_argument("log_ranking_probability: empty ranking");
  validate_ranking(ranking, scores.size());
  std::vector<bool> placed(scores.size(), false);
  double log_p = 0.0;
  for (auto doc : ranking) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (!placed[i]) top = std::max(top, scores[i]);
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (!placed[i]) total += std::exp(scores[i] - top);
    log_p += scores[doc] - top - std::log(total);
    placed[doc] = true;
  }
  return log_p;
}

double log_ranking_probability(const LinearRanker& ranker, const Ranking& ranking,
                               const FeatureMatrix& candidates) {
  auto scores = score_all(ranker, candidates);
  return log_ranking_probability_from_scores(scores, ranking);
}

double pair_preference_probability_from_scores(double score_i, double score_j) {
  const double gap = score_i - score_j;
  if (gap >= 0.0) return 1.0 / (1.0 + std::exp(-gap));
  const double e = std::exp(gap);
  return e / (1.0 + e);
}

double pair_preference_probability(const LinearRanker& ranker, std::span<const double> d_i,
                                   std::span<const double> d_j) {
  return pair_preference_probability_from_scores(score(ranker, d_i), score(ranker, d_j));
}

std::vector<double> sample_unit_sphere(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("sample_unit_sphere: dim must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = gauss(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace oltr
