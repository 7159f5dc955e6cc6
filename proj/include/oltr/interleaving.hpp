#pragma once

#include <span>
#include <vector>

#include "oltr/core.hpp"

namespace oltr {

/// Result of comparing ranker A (the current model) against ranker B (the candidate).
enum class ComparisonOutcome { current, candidate, tie };

/// Displayed list plus, per position, which ranker contributed it (0 = A, 1 = B).
struct InterleavedList {
  Ranking displayed;
  std::vector<int> assignment;
};

inline constexpr double kDefaultTau = 3.0;

/// Expected credit differences this close to zero are ties. Each clicked
/// position contributes a term in [-1, 1], and the posteriors of documents the
/// two rankers treat identically only cancel up to rounding.
inline constexpr double kCreditTieTolerance = 1e-12;

/// Probabilistic interleaving: each ranker becomes a distribution over its
/// remaining documents with mass proportional to 1 / rank^tau; per display
/// position a fair coin picks a ranker, which draws a document that is then
/// removed from both distributions. `r_a` and `r_b` must be permutations of
/// the same document set.
InterleavedList probabilistic_interleave(const Ranking& r_a, const Ranking& r_b, std::size_t k,
                                         Rng& rng, double tau = kDefaultTau);

/// Per displayed position, the posterior probability that ranker A produced
/// it given the displayed list. The assignment posterior factorizes over
/// positions because documents leave both distributions regardless of which
/// ranker drew them.
std::vector<double> probabilistic_assignment_posterior(const Ranking& displayed,
                                                       const Ranking& r_a, const Ranking& r_b,
                                                       double tau = kDefaultTau);

/// Expected (credit_A - credit_B) over the assignment posterior, where a
/// ranker's credit is the number of clicked positions assigned to it.
double probabilistic_expected_credit(const Ranking& displayed, const std::vector<bool>& clicks,
                                     const Ranking& r_a, const Ranking& r_b,
                                     double tau = kDefaultTau);

/// Sign of the expected credit difference; zero (within kCreditTieTolerance,
/// including no clicks) is a tie.
ComparisonOutcome infer_preference_probabilistic(const Ranking& displayed,
                                                 const std::vector<bool>& clicks,
                                                 const Ranking& r_a, const Ranking& r_b,
                                                 double tau = kDefaultTau);

/// Team-draft interleaving. Each round a fair coin decides which ranker picks
/// first; each picks its highest-ranked document not yet displayed.
InterleavedList team_draft_interleave(const Ranking& r_a, const Ranking& r_b, std::size_t k,
                                      Rng& rng);
ComparisonOutcome infer_preference_team_draft(const InterleavedList& list,
                                              const std::vector<bool>& clicks);

}  // namespace oltr
