#pragma once

#include <span>
#include <string>
#include <vector>

#include "oltr/click_sim.hpp"
#include "oltr/core.hpp"
#include "oltr/data.hpp"
#include "oltr/interleaving.hpp"

namespace oltr {

enum class Comparator { probabilistic, team_draft, oracle };

Comparator comparator_from_name(const std::string& name);
std::string to_string(Comparator comparator);

struct DbgdState {
  LinearRanker ranker;
  double learning_rate = 0.001;
  double sphere_radius = 1.0;
  Comparator comparator = Comparator::probabilistic;
  double tau = kDefaultTau;

  void validate() const;
};

/// Everything one DBGD impression produced, for tests and diagnostics.
struct DbgdStepTrace {
  DbgdState next;
  std::vector<double> direction;  // unit vector u
  Ranking current_ranking;
  Ranking candidate_ranking;
  Ranking displayed;  // empty for the oracle comparator
  std::vector<bool> clicks;
  ComparisonOutcome outcome = ComparisonOutcome::tie;
};

/// NDCG@k of both rankings against the true grades; strictly higher wins.
ComparisonOutcome oracle_compare(const Ranking& r_a, const Ranking& r_b,
                                 std::span<const int> grades, std::size_t k = 10);

/// theta + eta * delta * u when the candidate won, otherwise theta unchanged.
DbgdState apply_dbgd_update(const DbgdState& state, std::span<const double> direction,
                            ComparisonOutcome outcome);

DbgdStepTrace dbgd_step_traced(const DbgdState& state, const Query& query,
                               const ClickModelSpec& clicks, std::size_t k, Rng& rng);

/// One impression: perturb, rank both models over the full candidate set,
/// compare (interleaving + simulated clicks, or the NDCG oracle), update.
DbgdState dbgd_step(const DbgdState& state, const Query& query, const ClickModelSpec& clicks,
                    std::size_t k, Rng& rng);

}  // namespace oltr
