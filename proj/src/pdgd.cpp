#include "oltr/pdgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oltr {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(-std::fabs(x - y)));
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_interaction(const Query& query, const Interaction& interaction) {
  validate_ranking(interaction.ranking, query.size());
  if (interaction.clicks.size() != interaction.ranking.size())
    throw std::invalid_argument("pdgd: clicks not aligned with ranking");
}

}  // namespace

void PdgdState::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("pdgd: learning rate must be > 0");
}

std::vector<PreferencePair> infer_pairwise_preferences(const Interaction& interaction) {
  const auto& clicks = interaction.clicks;
  std::vector<PreferencePair> pairs;
  auto last = std::find(clicks.rbegin(), clicks.rend(), true);
  if (last == clicks.rend()) return pairs;
  const std::size_t last_click = static_cast<std::size_t>(clicks.rend() - last) - 1;
  const std::size_t observed_end = std::min(last_click + 2, clicks.size());
  for (std::size_t c = 0; c <= last_click; ++c) {
    if (!clicks[c]) continue;
    for (std::size_t o = 0; o < observed_end; ++o)
      if (!clicks[o]) pairs.push_back({c, o});
  }
  return pairs;
}

SwapLikelihood::SwapLikelihood(std::span<const double> scores, const Ranking& displayed) {
  validate_ranking(displayed, scores.size());
  std::vector<bool> shown(scores.size(), false);
  displayed_scores_.reserve(displayed.size());
  for (auto d : displayed) {
    shown[d] = true;
    displayed_scores_.push_back(scores[d]);
  }
  double hidden = kNegInf;
  for (std::size_t d = 0; d < scores.size(); ++d)
    if (!shown[d]) hidden = log_add(hidden, scores[d]);

  suffix_.assign(displayed.size() + 1, kNegInf);
  suffix_[displayed.size()] = hidden;
  for (std::size_t r = displayed.size(); r-- > 0;)
    suffix_[r] = log_add(displayed_scores_[r], suffix_[r + 1]);
}

double SwapLikelihood::log_ratio(std::size_t pos_a, std::size_t pos_b) const {
  if (pos_a == pos_b || pos_a >= displayed_scores_.size() || pos_b >= displayed_scores_.size())
    throw std::invalid_argument("swap: invalid position pair");
  const std::size_t a = std::min(pos_a, pos_b);
  const std::size_t b = std::max(pos_a, pos_b);
  // Remaining mass at positions a+1..b of R* holds doc R[a] in place of R[b].
  double without_b = suffix_[b + 1];
  double delta = 0.0;
  for (std::size_t r = b; r > a; --r) {
    if (r < b) without_b = log_add(displayed_scores_[r], without_b);
    const double swapped = log_add(displayed_scores_[a], without_b);
    delta += swapped - suffix_[r];
  }
  return delta;
}

double SwapLikelihood::rho(std::size_t pos_a, std::size_t pos_b) const {
  return logistic(-log_ratio(pos_a, pos_b));
}

double pair_weight_rho(const LinearRanker& ranker, const Ranking& displayed,
                       const FeatureMatrix& candidates, const PreferencePair& pair) {
  auto scores = score_all(ranker, candidates);
  SwapLikelihood swaps(scores, displayed);
  return swaps.rho(pair.clicked_pos, pair.unclicked_pos);
}

std::vector<double> pdgd_gradient(const LinearRanker& ranker, const Query& query,
                                  const Interaction& interaction) {
  check_interaction(query, interaction);
  std::vector<double> grad(ranker.dim(), 0.0);
  auto pairs = infer_pairwise_preferences(interaction);
  if (pairs.empty()) return grad;

  auto scores = score_all(ranker, query.docs);
  SwapLikelihood swaps(scores, interaction.ranking);
  for (const auto& pair : pairs) {
    const std::size_t i = interaction.ranking[pair.clicked_pos];
    const std::size_t j = interaction.ranking[pair.unclicked_pos];
    const double p_ij = pair_preference_probability_from_scores(scores[i], scores[j]);
    const double p_ji = pair_preference_probability_from_scores(scores[j], scores[i]);
    const double w = swaps.rho(pair.clicked_pos, pair.unclicked_pos) * p_ij * p_ji;
    auto di = query.docs.row(i);
    auto dj = query.docs.row(j);
    for (std::size_t f = 0; f < grad.size(); ++f) grad[f] += w * (di[f] - dj[f]);
  }
  return grad;
}

PdgdState pdgd_update(const PdgdState& state, const Query& query, const Interaction& interaction) {
  state.validate();
  check_interaction(query, interaction);
  if (std::none_of(interaction.clicks.begin(), interaction.clicks.end(), [](bool c) { return c; }))
    return state;
  auto grad = pdgd_gradient(state.ranker, query, interaction);
  PdgdState next = state;
  for (std::size_t f = 0; f < grad.size(); ++f)
    next.ranker.weights[f] += state.learning_rate * grad[f];
  return next;
}

PdgdState pdgd_step(const PdgdState& state, const Query& query, const ClickModelSpec& clicks,
                    std::size_t k, Rng& rng) {
  auto displayed = sample_ranking(state.ranker, query.docs, k, rng);
  auto interaction = simulate_clicks(clicks, displayed, query.relevance, rng);
  return pdgd_update(state, query, interaction);
}

}  // namespace oltr
