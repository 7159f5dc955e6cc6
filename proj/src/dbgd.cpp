#include "oltr/dbgd.hpp"

#include <stdexcept>

#include "oltr/eval.hpp"

namespace oltr {

Comparator comparator_from_name(const std::string& name) {
  if (name == "probabilistic") return Comparator::probabilistic;
  if (name == "team_draft") return Comparator::team_draft;
  if (name == "oracle") return Comparator::oracle;
  throw std::invalid_argument("unknown comparator '" + name + "'");
}

std::string to_string(Comparator comparator) {
  switch (comparator) {
    case Comparator::probabilistic: return "probabilistic";
    case Comparator::team_draft: return "team_draft";
    case Comparator::oracle: return "oracle";
  }
  return "unknown";
}

void DbgdState::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("dbgd: learning rate must be > 0");
  if (!(sphere_radius > 0.0)) throw std::invalid_argument("dbgd: sphere radius must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("dbgd: tau must be > 0");
}

ComparisonOutcome oracle_compare(const Ranking& r_a, const Ranking& r_b,
                                 std::span<const int> grades, std::size_t k) {
  const double a = ndcg_at_k(r_a, grades, k);
  const double b = ndcg_at_k(r_b, grades, k);
  if (a > b) return ComparisonOutcome::current;
  if (b > a) return ComparisonOutcome::candidate;
  return ComparisonOutcome::tie;
}

DbgdState apply_dbgd_update(const DbgdState& state, std::span<const double> direction,
                            ComparisonOutcome outcome) {
  if (direction.size() != state.ranker.dim())
    throw std::invalid_argument("dbgd: direction dimension mismatch");
  DbgdState next = state;
  if (outcome != ComparisonOutcome::candidate) return next;
  const double step = state.learning_rate * state.sphere_radius;
  for (std::size_t f = 0; f < direction.size(); ++f) next.ranker.weights[f] += step * direction[f];
  return next;
}

DbgdStepTrace dbgd_step_traced(const DbgdState& state, const Query& query,
                               const ClickModelSpec& click_model, std::size_t k, Rng& rng) {
  state.validate();
  if (query.size() == 0) throw std::invalid_argument("dbgd: query has no documents");
  DbgdStepTrace trace;
  trace.direction = sample_unit_sphere(state.ranker.dim(), rng);

  LinearRanker candidate = state.ranker;
  for (std::size_t f = 0; f < candidate.dim(); ++f)
    candidate.weights[f] += state.sphere_radius * trace.direction[f];

  const std::size_t n = query.size();
  trace.current_ranking = rank_deterministic(state.ranker, query.docs, n, rng);
  trace.candidate_ranking = rank_deterministic(candidate, query.docs, n, rng);

  switch (state.comparator) {
    case Comparator::oracle:
      trace.outcome = oracle_compare(trace.current_ranking, trace.candidate_ranking,
                                     query.relevance, k);
      break;
    case Comparator::probabilistic: {
      auto list = probabilistic_interleave(trace.current_ranking, trace.candidate_ranking, k, rng,
                                           state.tau);
      auto interaction = simulate_clicks(click_model, list.displayed, query.relevance, rng);
      trace.outcome = infer_preference_probabilistic(list.displayed, interaction.clicks,
                                                     trace.current_ranking,
                                                     trace.candidate_ranking, state.tau);
      trace.displayed = std::move(list.displayed);
      trace.clicks = std::move(interaction.clicks);
      break;
    }
    case Comparator::team_draft: {
      auto list = team_draft_interleave(trace.current_ranking, trace.candidate_ranking, k, rng);
      auto interaction = simulate_clicks(click_model, list.displayed, query.relevance, rng);
      trace.outcome = infer_preference_team_draft(list, interaction.clicks);
      trace.displayed = std::move(list.displayed);
      trace.clicks = std::move(interaction.clicks);
      break;
    }
  }
  trace.next = apply_dbgd_update(state, trace.direction, trace.outcome);
  return trace;
}

DbgdState dbgd_step(const DbgdState& state, const Query& query, const ClickModelSpec& clicks,
                    std::size_t k, Rng& rng) {
  return dbgd_step_traced(state, query, clicks, k, rng).next;
}

}  // namespace oltr
