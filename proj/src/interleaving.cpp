#include "oltr/interleaving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oltr {
namespace {

std::size_t max_index(const Ranking& r) {
  return r.empty() ? 0 : *std::max_element(r.begin(), r.end()) + 1;
}

/// 1-based rank of every document in `r`; 0 for documents not in `r`.
std::vector<std::size_t> rank_lookup(const Ranking& r, std::size_t n) {
  std::vector<std::size_t> ranks(n, 0);
  for (std::size_t i = 0; i < r.size(); ++i) ranks[r[i]] = i + 1;
  return ranks;
}

void check_pair(const Ranking& r_a, const Ranking& r_b) {
  if (r_a.empty() || r_b.empty()) throw std::invalid_argument("interleave: empty ranking");
  if (r_a.size() != r_b.size())
    throw std::invalid_argument("interleave: rankings cover different document sets");
  const std::size_t n = std::max(max_index(r_a), max_index(r_b));
  validate_ranking(r_a, n);
  validate_ranking(r_b, n);
  auto ra = rank_lookup(r_a, n);
  for (auto d : r_b)
    if (ra[d] == 0) throw std::invalid_argument("interleave: rankings cover different document sets");
}

/// Softened rank distribution restricted to documents still available.
/// Masses are kept as logs, -tau * log(rank), so large tau cannot underflow.
class SoftRanker {
 public:
  SoftRanker(const Ranking& r, std::size_t n, double tau)
      : log_mass_(n, kRemoved), available_(n, false) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      log_mass_[r[i]] = -tau * std::log(static_cast<double>(i + 1));
      available_[r[i]] = true;
    }
    renormalize();
  }

  double probability(std::size_t doc) const {
    return available_[doc] ? std::exp(log_mass_[doc] - log_total_) : 0.0;
  }

  void remove(std::size_t doc) {
    available_[doc] = false;
    renormalize();
  }

  std::size_t draw(Rng& rng) const {
    double u = uniform01(rng);
    std::size_t last = 0;
    for (std::size_t d = 0; d < log_mass_.size(); ++d) {
      if (!available_[d]) continue;
      last = d;
      u -= probability(d);
      if (u < 0.0) return d;
    }
    return last;
  }

 private:
  static constexpr double kRemoved = -std::numeric_limits<double>::infinity();

  void renormalize() {
    double top = kRemoved;
    for (std::size_t d = 0; d < log_mass_.size(); ++d)
      if (available_[d]) top = std::max(top, log_mass_[d]);
    double total = 0.0;
    for (std::size_t d = 0; d < log_mass_.size(); ++d)
      if (available_[d]) total += std::exp(log_mass_[d] - top);
    log_total_ = top + std::log(total);
  }

  std::vector<double> log_mass_;
  std::vector<bool> available_;
  double log_total_ = 0.0;
};

}  // namespace

InterleavedList probabilistic_interleave(const Ranking& r_a, const Ranking& r_b, std::size_t k,
                                         Rng& rng, double tau) {
  check_pair(r_a, r_b);
  if (k == 0) throw std::invalid_argument("interleave: k must be positive");
  const std::size_t n = max_index(r_a);
  SoftRanker soft_a(r_a, n, tau);
  SoftRanker soft_b(r_b, n, tau);
  const std::size_t len = std::min(k, r_a.size());
  InterleavedList out;
  out.displayed.reserve(len);
  out.assignment.reserve(len);
  for (std::size_t pos = 0; pos < len; ++pos) {
    const int who = bernoulli(rng, 0.5) ? 1 : 0;
    const std::size_t doc = who == 0 ? soft_a.draw(rng) : soft_b.draw(rng);
    out.displayed.push_back(doc);
    out.assignment.push_back(who);
    soft_a.remove(doc);
    soft_b.remove(doc);
  }
  return out;
}

std::vector<double> probabilistic_assignment_posterior(const Ranking& displayed,
                                                       const Ranking& r_a, const Ranking& r_b,
                                                       double tau) {
  check_pair(r_a, r_b);
  const std::size_t n = max_index(r_a);
  validate_ranking(displayed, n);
  SoftRanker soft_a(r_a, n, tau);
  SoftRanker soft_b(r_b, n, tau);
  std::vector<double> posterior;
  posterior.reserve(displayed.size());
  for (auto doc : displayed) {
    const double pa = soft_a.probability(doc);
    const double pb = soft_b.probability(doc);
    if (pa + pb <= 0.0) throw std::invalid_argument("interleave: displayed document not ranked");
    posterior.push_back(pa / (pa + pb));
    soft_a.remove(doc);
    soft_b.remove(doc);
  }
  return posterior;
}

double probabilistic_expected_credit(const Ranking& displayed, const std::vector<bool>& clicks,
                                     const Ranking& r_a, const Ranking& r_b, double tau) {
  if (clicks.size() != displayed.size())
    throw std::invalid_argument("infer_preference: clicks not aligned with displayed list");
  if (std::none_of(clicks.begin(), clicks.end(), [](bool c) { return c; })) return 0.0;
  auto posterior = probabilistic_assignment_posterior(displayed, r_a, r_b, tau);
  double diff = 0.0;
  for (std::size_t i = 0; i < displayed.size(); ++i)
    if (clicks[i]) diff += posterior[i] - (1.0 - posterior[i]);
  return diff;
}

ComparisonOutcome infer_preference_probabilistic(const Ranking& displayed,
                                                 const std::vector<bool>& clicks,
                                                 const Ranking& r_a, const Ranking& r_b,
                                                 double tau) {
  const double diff = probabilistic_expected_credit(displayed, clicks, r_a, r_b, tau);
  if (diff > kCreditTieTolerance) return ComparisonOutcome::current;
  if (diff < -kCreditTieTolerance) return ComparisonOutcome::candidate;
  return ComparisonOutcome::tie;
}

InterleavedList team_draft_interleave(const Ranking& r_a, const Ranking& r_b, std::size_t k,
                                      Rng& rng) {
  check_pair(r_a, r_b);
  if (k == 0) throw std::invalid_argument("interleave: k must be positive");
  const std::size_t n = max_index(r_a);
  const std::size_t len = std::min(k, r_a.size());
  std::vector<bool> shown(n, false);
  std::size_t next_a = 0;
  std::size_t next_b = 0;
  InterleavedList out;

  auto pick = [&](const Ranking& r, std::size_t& cursor, int team) {
    while (shown[r[cursor]]) ++cursor;
    shown[r[cursor]] = true;
    out.displayed.push_back(r[cursor]);
    out.assignment.push_back(team);
  };

  while (out.displayed.size() < len) {
    const bool a_first = bernoulli(rng, 0.5);
    if (a_first) pick(r_a, next_a, 0);
    else pick(r_b, next_b, 1);
    if (out.displayed.size() >= len) break;
    if (a_first) pick(r_b, next_b, 1);
    else pick(r_a, next_a, 0);
  }
  return out;
}

ComparisonOutcome infer_preference_team_draft(const InterleavedList& list,
                                              const std::vector<bool>& clicks) {
  if (clicks.size() != list.displayed.size() || list.assignment.size() != list.displayed.size())
    throw std::invalid_argument("infer_preference: clicks not aligned with displayed list");
  int credit_a = 0;
  int credit_b = 0;
  for (std::size_t i = 0; i < clicks.size(); ++i) {
    if (!clicks[i]) continue;
    (list.assignment[i] == 0 ? credit_a : credit_b) += 1;
  }
  if (credit_a > credit_b) return ComparisonOutcome::current;
  if (credit_b > credit_a) return ComparisonOutcome::candidate;
  return ComparisonOutcome::tie;
}

}  // namespace oltr
