#pragma once

#include <span>
#include <vector>

#include "oltr/click_sim.hpp"
#include "oltr/core.hpp"
#include "oltr/data.hpp"

namespace oltr {

struct PdgdState {
  LinearRanker ranker;
  double learning_rate = 0.1;

  void validate() const;
};

/// Inferred preference: the document at `clicked_pos` beats the one at
/// `unclicked_pos` (both positions in the displayed list).
struct PreferencePair {
  std::size_t clicked_pos = 0;
  std::size_t unclicked_pos = 0;

  bool operator==(const PreferencePair&) const = default;
};

/// Every position up to and including the one after the last click is taken
/// as observed; each clicked position is preferred over every observed
/// unclicked one.
std::vector<PreferencePair> infer_pairwise_preferences(const Interaction& interaction);

/// Plackett-Luce log-probability ratios for swapping two positions of a
/// displayed list, with the full candidate set in every denominator.
///
/// Swapping positions a < b only changes the denominators at positions
/// a+1..b, so each ratio costs O(b - a) after an O(n) suffix pass. All sums
/// are kept in log space.
class SwapLikelihood {
 public:
  SwapLikelihood(std::span<const double> scores, const Ranking& displayed);

  /// log P(R) - log P(R*) where R* swaps positions `pos_a` and `pos_b`.
  double log_ratio(std::size_t pos_a, std::size_t pos_b) const;

  /// P(R*) / (P(R) + P(R*)).
  double rho(std::size_t pos_a, std::size_t pos_b) const;

 private:
  std::vector<double> displayed_scores_;
  std::vector<double> suffix_;  // suffix_[r] = log of remaining mass before position r
};

double pair_weight_rho(const LinearRanker& ranker, const Ranking& displayed,
                       const FeatureMatrix& candidates, const PreferencePair& pair);

/// Sum over inferred pairs of rho * P(i > j) * P(j > i) * (d_i - d_j).
std::vector<double> pdgd_gradient(const LinearRanker& ranker, const Query& query,
                                  const Interaction& interaction);

/// theta + eta * gradient. An impression without clicks returns the state unchanged.
PdgdState pdgd_update(const PdgdState& state, const Query& query, const Interaction& interaction);

/// Samples a ranking, simulates clicks on it, and applies pdgd_update.
PdgdState pdgd_step(const PdgdState& state, const Query& query, const ClickModelSpec& clicks,
                    std::size_t k, Rng& rng);

}  // namespace oltr
