#include "oltr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/students_t.hpp>
#include <omp.h>

namespace oltr {

double dcg_at_k(const Ranking& ranking, std::span<const int> grades, std::size_t k) {
  double dcg = 0.0;
  const std::size_t len = std::min(k, ranking.size());
  for (std::size_t r = 0; r < len; ++r) {
    if (ranking[r] >= grades.size()) throw std::invalid_argument("dcg: index outside grades");
    const int g = grades[ranking[r]];
    dcg += (std::exp2(static_cast<double>(g)) - 1.0) / std::log2(static_cast<double>(r) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(const Ranking& ranking, std::span<const int> grades, std::size_t k) {
  std::vector<int> sorted(grades.begin(), grades.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Ranking ideal(sorted.size());
  std::iota(ideal.begin(), ideal.end(), std::size_t{0});
  const double ideal_dcg = dcg_at_k(ideal, sorted, k);
  if (ideal_dcg <= 0.0) return 0.0;
  return dcg_at_k(ranking, grades, k) / ideal_dcg;
}

namespace {

double query_ndcg(const LinearRanker& ranker, const Query& q, std::uint64_t seed,
                  std::size_t index, std::size_t k) {
  Rng rng(derive_seed(seed, index));
  auto ranking = rank_deterministic(ranker, q.docs, k, rng);
  return ndcg_at_k(ranking, q.relevance, k);
}

}  // namespace

double evaluate_heldout_serial(const LinearRanker& ranker, const std::vector<Query>& test,
                               std::uint64_t seed, std::size_t k) {
  if (test.empty()) throw std::invalid_argument("evaluate_heldout: empty test set");
  double total = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) total += query_ndcg(ranker, test[i], seed, i, k);
  return total / static_cast<double>(test.size());
}

double evaluate_heldout(const LinearRanker& ranker, const std::vector<Query>& test,
                        std::uint64_t seed, std::size_t k) {
  if (test.empty()) throw std::invalid_argument("evaluate_heldout: empty test set");
  // Per-query values are summed in index order afterwards so the result is
  // bitwise identical to the serial path.
  std::vector<double> per_query(test.size());
  const auto n = static_cast<std::ptrdiff_t>(test.size());
#pragma omp parallel for schedule(static) if (n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    per_query[idx] = query_ndcg(ranker, test[idx], seed, idx, k);
  }
  double total = 0.0;
  for (double v : per_query) total += v;
  return total / static_cast<double>(test.size());
}

void MetricTrace::append(std::size_t impressions, double ndcg) {
  if (!checkpoints_.empty() && impressions <= checkpoints_.back().impressions)
    throw std::invalid_argument("MetricTrace: impressions must strictly increase");
  if (!(ndcg >= 0.0 && ndcg <= 1.0 + 1e-12))
    throw std::invalid_argument("MetricTrace: ndcg " + std::to_string(ndcg) + " outside [0,1]");
  checkpoints_.push_back({impressions, std::min(ndcg, 1.0)});
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: need at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = std::pow(sample_std(a), 2) / na;
  const double vb = std::pow(sample_std(b), 2) / nb;
  const double diff = mean(a) - mean(b);
  const double se2 = va + vb;

  WelchResult out;
  if (se2 == 0.0) {
    out.df = na + nb - 2.0;
    if (diff == 0.0) return out;
    out.t = diff > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    out.p = 0.0;
    return out;
  }
  out.t = diff / std::sqrt(se2);
  out.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  boost::math::students_t dist(out.df);
  out.p = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(out.t))), 0.0,
                     1.0);
  return out;
}

}  // namespace oltr
