#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oltr/core.hpp"
#include "oltr/data.hpp"

namespace oltr {

inline constexpr std::size_t kMetricCutoff = 10;

/// DCG@k with gain 2^grade - 1 and discount log2(rank + 1).
double dcg_at_k(const Ranking& ranking, std::span<const int> grades, std::size_t k);

/// DCG normalized by the ideal ordering of all candidate grades; 0 when every
/// grade is 0.
double ndcg_at_k(const Ranking& ranking, std::span<const int> grades,
                 std::size_t k = kMetricCutoff);

/// Mean NDCG@k of the ranker's deterministic ranking over `test`. Ties are
/// broken with a per-query stream derived from `seed`, so the value does not
/// depend on the thread count.
double evaluate_heldout(const LinearRanker& ranker, const std::vector<Query>& test,
                        std::uint64_t seed, std::size_t k = kMetricCutoff);

/// Single-threaded reference for evaluate_heldout.
double evaluate_heldout_serial(const LinearRanker& ranker, const std::vector<Query>& test,
                               std::uint64_t seed, std::size_t k = kMetricCutoff);

struct Checkpoint {
  std::size_t impressions = 0;
  double ndcg = 0.0;

  bool operator==(const Checkpoint&) const = default;
};

class MetricTrace {
 public:
  /// Throws unless impressions strictly increase and ndcg lies in [0,1].
  void append(std::size_t impressions, double ndcg);

  const std::vector<Checkpoint>& checkpoints() const { return checkpoints_; }
  std::size_t size() const { return checkpoints_.size(); }
  bool empty() const { return checkpoints_.empty(); }
  const Checkpoint& back() const { return checkpoints_.back(); }

  bool operator==(const MetricTrace&) const = default;

 private:
  std::vector<Checkpoint> checkpoints_;
};

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

/// Two-sided unequal-variance t-test of mean(a) - mean(b).
/// Two zero-variance samples give t = 0, p = 1 for equal means and
/// t = +-inf, p = 0 otherwise.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> xs);

}  // namespace oltr
