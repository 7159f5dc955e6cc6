#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oltr/click_sim.hpp"

using namespace oltr;

TEST_CASE("click probability tables") {
  const auto perfect = ClickModelSpec::perfect();
  const auto noisy = ClickModelSpec::almost_random_cascading();
  CHECK(click_probability(perfect, 3) == 0.80);
  CHECK(click_probability(perfect, 0) == 0.00);
  CHECK(click_probability(noisy, 4) == 0.60);
  const std::array<double, 5> perfect_row{0.00, 0.20, 0.40, 0.80, 1.00};
  const std::array<double, 5> noisy_row{0.40, 0.45, 0.50, 0.55, 0.60};
  CHECK(perfect.click_probs == perfect_row);
  CHECK(noisy.click_probs == noisy_row);
  CHECK(ClickModelSpec::almost_random_noncascading().click_probs == noisy_row);
  CHECK(perfect.stop_prob_after_click == 0.0);
  CHECK(noisy.stop_prob_after_click == 0.5);
  CHECK_THROWS_AS(click_probability(perfect, 5), std::invalid_argument);
  CHECK_THROWS_AS(click_probability(perfect, -1), std::invalid_argument);
  CHECK_THROWS_AS(ClickModelSpec::from_name("navigational"), std::invalid_argument);
  CHECK(ClickModelSpec::from_name("almost_random_noncascading").kind ==
        ClickModelKind::almost_random_noncascading);
}

TEST_CASE("perfect cascading user") {
  Rng rng(1);
  const auto spec = ClickModelSpec::perfect();
  const std::vector<int> top{4, 0, 0}, none{0, 0};
  for (int i = 0; i < 1000; ++i) {
    auto a = simulate_cascading({0, 1, 2}, top, spec, rng);
    CHECK(a.clicks == std::vector<bool>{true, false, false});
    CHECK(a.observed == std::vector<bool>{true, true, true});
    auto b = simulate_cascading({0, 1}, none, spec, rng);
    CHECK(b.clicks == std::vector<bool>{false, false});
  }
  const std::vector<int> mixed{0, 4, 1, 4, 0, 3};
  for (int i = 0; i < 1000; ++i) {
    auto c = simulate_cascading({0, 1, 2, 3, 4, 5}, mixed, spec, rng);
    CHECK(c.clicks[1]);
    CHECK(c.clicks[3]);
    CHECK(!c.clicks[0]);
    CHECK(!c.clicks[4]);
  }
}

TEST_CASE("almost random cascading user reaches position 2 with probability 0.75") {
  Rng rng(2);
  const auto spec = ClickModelSpec::almost_random_cascading();
  const std::vector<int> grades{2, 2, 2, 2};
  int observed = 0, clicked = 0;
  const int runs = 100000;
  for (int i = 0; i < runs; ++i) {
    auto a = simulate_cascading({0, 1, 2, 3}, grades, spec, rng);
    observed += a.observed[1];
    clicked += a.clicks[1];
  }
  CHECK(std::fabs(observed / double(runs) - 0.75) <= 0.01);
  CHECK(std::fabs(clicked / double(runs) - 0.375) <= 0.01);
}

TEST_CASE("cascading clicks never follow a realized stop") {
  Rng rng(3);
  const auto spec = ClickModelSpec::almost_random_cascading();
  const std::vector<int> grades{4, 3, 2, 1, 0, 4, 4, 4, 4, 4};
  Ranking r{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  for (int i = 0; i < 20000; ++i) {
    auto a = simulate_cascading(r, grades, spec, rng);
    // Observation is a prefix; nothing after it is clicked.
    bool seen_gap = false;
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (!a.observed[p]) seen_gap = true;
      if (seen_gap) {
        CHECK(!a.observed[p]);
        CHECK(!a.clicks[p]);
      }
    }
    // The last observed position is either the end of the list or a click.
    std::size_t last = 0;
    while (last + 1 < r.size() && a.observed[last + 1]) ++last;
    if (last + 1 < r.size()) CHECK(a.clicks[last]);
  }
}

TEST_CASE("non-cascading observation follows 1/rank") {
  Rng rng(4);
  const auto spec = ClickModelSpec::almost_random_noncascading();
  const std::vector<int> grades{0, 4, 0, 0};
  std::array<int, 4> observed{}, clicked{};
  const int runs = 100000;
  for (int i = 0; i < runs; ++i) {
    auto a = simulate_noncascading({0, 1, 2, 3}, grades, spec, rng);
    for (int p = 0; p < 4; ++p) {
      observed[p] += a.observed[p];
      clicked[p] += a.clicks[p];
    }
  }
  CHECK(observed[0] == runs);
  CHECK(std::fabs(observed[3] / double(runs) - 0.25) <= 0.01);
  CHECK(std::fabs(clicked[1] / double(runs) - 0.30) <= 0.01);
  CHECK(std::fabs(clicked[2] / double(runs) - 0.40 / 3.0) <= 0.01);
}

TEST_CASE("click rates match enumeration on short lists") {
  // Exact marginal click probability per position for the cascading model,
  // by enumerating every click/stop path.
  auto exact = [](const ClickModelSpec& spec, const std::vector<int>& grades) {
    std::vector<double> p(grades.size(), 0.0);
    double reach = 1.0;
    for (std::size_t r = 0; r < grades.size(); ++r) {
      const double c = spec.click_probs[grades[r]];
      p[r] = reach * c;
      reach *= (1.0 - c) + c * (1.0 - spec.stop_prob_after_click);
    }
    return p;
  };
  Rng rng(5);
  for (const auto& spec : {ClickModelSpec::perfect(), ClickModelSpec::almost_random_cascading()}) {
    const std::vector<int> grades{3, 1, 4, 2};
    auto expected = exact(spec, grades);
    std::vector<double> counts(4, 0.0);
    const int runs = 100000;
    for (int i = 0; i < runs; ++i) {
      auto a = simulate_cascading({0, 1, 2, 3}, grades, spec, rng);
      for (int p = 0; p < 4; ++p) counts[p] += a.clicks[p];
    }
    for (int p = 0; p < 4; ++p) CHECK(std::fabs(counts[p] / runs - expected[p]) <= 0.01);
  }
}

TEST_CASE("simulators validate their inputs") {
  Rng rng(6);
  const std::vector<int> grades{1, 2};
  CHECK_THROWS_AS(simulate_cascading({0, 1, 2}, grades, ClickModelSpec::perfect(), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_noncascading({0}, grades, ClickModelSpec::almost_random_noncascading(), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_noncascading({0, 1}, grades, ClickModelSpec::perfect(), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_cascading({0, 1}, grades, ClickModelSpec::almost_random_noncascading(), rng),
                  std::invalid_argument);

  // simulate_clicks maps candidate grades onto the displayed order only.
  const std::vector<int> query_grades{0, 0, 4, 4, 4};
  for (int i = 0; i < 100; ++i) {
    auto a = simulate_clicks(ClickModelSpec::perfect(), {2, 0}, query_grades, rng);
    CHECK(a.clicks == std::vector<bool>{true, false});
  }
  CHECK_THROWS_AS(simulate_clicks(ClickModelSpec::perfect(), {7}, query_grades, rng),
                  std::invalid_argument);
}
