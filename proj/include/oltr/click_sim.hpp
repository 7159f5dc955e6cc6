#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "oltr/core.hpp"

namespace oltr {

enum class ClickModelKind { perfect, almost_random_cascading, almost_random_noncascading };

/// Per-grade click probabilities plus the cascading stop rule.
struct ClickModelSpec {
  ClickModelKind kind = ClickModelKind::perfect;
  std::array<double, 5> click_probs{};
  double stop_prob_after_click = 0.0;

  static ClickModelSpec perfect();
  static ClickModelSpec almost_random_cascading();
  static ClickModelSpec almost_random_noncascading();
  static ClickModelSpec from_name(const std::string& name);

  bool cascading() const { return kind != ClickModelKind::almost_random_noncascading; }
};

std::string to_string(ClickModelKind kind);

/// One impression. `observed` is simulator ground truth and is never shown
/// to a learner; learners only read `ranking` and `clicks`.
struct Interaction {
  Ranking ranking;
  std::vector<bool> clicks;
  std::vector<bool> observed;

  std::size_t size() const { return ranking.size(); }
};

double click_probability(const ClickModelSpec& spec, int grade);

/// `grades[r]` is the grade of the document displayed at position r.
Interaction simulate_cascading(const Ranking& ranking, std::span<const int> grades,
                               const ClickModelSpec& spec, Rng& rng);
Interaction simulate_noncascading(const Ranking& ranking, std::span<const int> grades,
                                  const ClickModelSpec& spec, Rng& rng);

/// Dispatches on the model kind; `query_grades` is indexed by candidate.
Interaction simulate_clicks(const ClickModelSpec& spec, const Ranking& displayed,
                            std::span<const int> query_grades, Rng& rng);

}  // namespace oltr
