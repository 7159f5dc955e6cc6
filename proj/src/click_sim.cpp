#include "oltr/click_sim.hpp"

#include <stdexcept>

namespace oltr {

ClickModelSpec ClickModelSpec::perfect() {
  return {ClickModelKind::perfect, {0.00, 0.20, 0.40, 0.80, 1.00}, 0.0};
}

ClickModelSpec ClickModelSpec::almost_random_cascading() {
  return {ClickModelKind::almost_random_cascading, {0.40, 0.45, 0.50, 0.55, 0.60}, 0.5};
}

ClickModelSpec ClickModelSpec::almost_random_noncascading() {
  return {ClickModelKind::almost_random_noncascading, {0.40, 0.45, 0.50, 0.55, 0.60}, 0.0};
}

ClickModelSpec ClickModelSpec::from_name(const std::string& name) {
  if (name == "perfect") return perfect();
  if (name == "almost_random_cascading") return almost_random_cascading();
  if (name == "almost_random_noncascading") return almost_random_noncascading();
  throw std::invalid_argument("unknown click model '" + name + "'");
}

std::string to_string(ClickModelKind kind) {
  switch (kind) {
    case ClickModelKind::perfect: return "perfect";
    case ClickModelKind::almost_random_cascading: return "almost_random_cascading";
    case ClickModelKind::almost_random_noncascading: return "almost_random_noncascading";
  }
  return "unknown";
}

double click_probability(const ClickModelSpec& spec, int grade) {
  if (grade < 0 || grade > 4)
    throw std::invalid_argument("click_probability: grade " + std::to_string(grade) +
                                " outside [0,4]");
  return spec.click_probs[static_cast<std::size_t>(grade)];
}

Interaction simulate_cascading(const Ranking& ranking, std::span<const int> grades,
                               const ClickModelSpec& spec, Rng& rng) {
  if (!spec.cascading()) throw std::invalid_argument("simulate_cascading: non-cascading model");
  if (grades.size() != ranking.size())
    throw std::invalid_argument("simulate_cascading: grades and ranking differ in length");
  Interaction out{ranking, std::vector<bool>(ranking.size(), false),
                  std::vector<bool>(ranking.size(), false)};
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    out.observed[r] = true;
    if (!bernoulli(rng, click_probability(spec, grades[r]))) continue;
    out.clicks[r] = true;
    if (spec.stop_prob_after_click > 0.0 && bernoulli(rng, spec.stop_prob_after_click)) break;
  }
  return out;
}

Interaction simulate_noncascading(const Ranking& ranking, std::span<const int> grades,
                                  const ClickModelSpec& spec, Rng& rng) {
  if (spec.cascading())
    throw std::invalid_argument("simulate_noncascading: cascading model");
  if (grades.size() != ranking.size())
    throw std::invalid_argument("simulate_noncascading: grades and ranking differ in length");
  Interaction out{ranking, std::vector<bool>(ranking.size(), false),
                  std::vector<bool>(ranking.size(), false)};
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    out.observed[r] = bernoulli(rng, 1.0 / static_cast<double>(r + 1));
    if (out.observed[r]) out.clicks[r] = bernoulli(rng, click_probability(spec, grades[r]));
  }
  return out;
}

Interaction simulate_clicks(const ClickModelSpec& spec, const Ranking& displayed,
                            std::span<const int> query_grades, Rng& rng) {
  std::vector<int> grades(displayed.size());
  for (std::size_t r = 0; r < displayed.size(); ++r) {
    if (displayed[r] >= query_grades.size())
      throw std::invalid_argument("simulate_clicks: displayed index out of range");
    grades[r] = query_grades[displayed[r]];
  }
  return spec.cascading() ? simulate_cascading(displayed, grades, spec, rng)
                          : simulate_noncascading(displayed, grades, spec, rng);
}

}  // namespace oltr
