#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "oltr/core.hpp"
#include "oracles.hpp"

using namespace oltr;

namespace {

FeatureMatrix column(std::vector<double> values) {
  std::vector<std::vector<double>> rows;
  for (double v : values) rows.push_back({v});
  return FeatureMatrix::from_rows(rows);
}

FeatureMatrix random_matrix(std::size_t rows, std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FeatureMatrix m(rows, dim);
  for (std::size_t i = 0; i < rows; ++i)
    for (auto& x : m.row(i)) x = g(rng);
  return m;
}

}  // namespace

TEST_CASE("score is the dot product") {
  const std::vector<double> d1{3.2, -1.0}, d2{3.0, 4.0}, d3{2.0, 2.0};
  CHECK(score(LinearRanker({0.0, 0.0}), d1) == 0.0);
  CHECK(score(LinearRanker({1.0, 2.0}), d2) == 11.0);
  CHECK(score(LinearRanker({0.5, -0.5}), d3) == 0.0);
  const std::vector<double> short_doc{1.0};
  CHECK_THROWS_AS(score(LinearRanker({1.0, 2.0}), short_doc), std::invalid_argument);
}

TEST_CASE("rank_deterministic orders by descending score and truncates") {
  Rng rng(1);
  const LinearRanker identity({1.0});
  CHECK(rank_deterministic(identity, column({3, 1, 2}), 3, rng) == Ranking{0, 2, 1});
  CHECK(rank_deterministic(identity, column({5, 4, 3, 2}), 2, rng) == Ranking{0, 1});
  CHECK(rank_deterministic(identity, column({5, 4}), 10, rng) == Ranking{0, 1});
  CHECK_THROWS_AS(rank_deterministic(identity, FeatureMatrix{}, 3, rng), std::invalid_argument);
}

TEST_CASE("rank_deterministic breaks ties uniformly") {
  Rng rng(7);
  const auto zero = LinearRanker::zeros(1);
  const auto docs = column({0.3, -1.0, 2.0});
  std::map<Ranking, int> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) counts[rank_deterministic(zero, docs, 3, rng)]++;
  CHECK(counts.size() == 6);
  for (const auto& [r, c] : counts) CHECK(std::fabs(c / double(draws) - 1.0 / 6.0) <= 0.02);
}

TEST_CASE("rank_deterministic keeps higher scores first even with partial ties") {
  Rng rng(3);
  const LinearRanker identity({1.0});
  const auto docs = column({1, 2, 2, 0, 2});
  for (int i = 0; i < 200; ++i) {
    auto r = rank_deterministic(identity, docs, 5, rng);
    CHECK(std::set<std::size_t>(r.begin(), r.begin() + 3) == std::set<std::size_t>{1, 2, 4});
    CHECK(r[3] == 0);
    CHECK(r[4] == 3);
  }
}

TEST_CASE("scale invariance of deterministic rankings") {
  Rng gen(11);
  std::uniform_real_distribution<double> alpha(1e-3, 1e3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 15, dim = 1 + gen() % 8;
    auto docs = random_matrix(n, dim, gen);
    LinearRanker theta(sample_unit_sphere(dim, gen));
    LinearRanker scaled = theta;
    const double a = alpha(gen);
    for (auto& w : scaled.weights) w *= a;
    const std::uint64_t seed = gen();
    Rng r1(seed), r2(seed);
    CHECK(rank_deterministic(theta, docs, n, r1) == rank_deterministic(scaled, docs, n, r2));
  }
}

TEST_CASE("sample_ranking with equal scores is uniform over permutations") {
  Rng rng(5);
  const auto zero = LinearRanker::zeros(1);
  const auto docs = column({1, 2, 3});
  std::map<Ranking, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) counts[sample_ranking(zero, docs, 3, rng)]++;
  CHECK(counts.size() == 6);
  for (const auto& [r, c] : counts) CHECK(std::fabs(c / double(draws) - 1.0 / 6.0) <= 0.01);
}

TEST_CASE("sample_ranking follows the sequential Plackett-Luce product") {
  Rng rng(9);
  const LinearRanker identity({1.0});
  const auto docs = column({std::log(2.0), 0.0, 0.0});
  int hits = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) hits += sample_ranking(identity, docs, 3, rng) == Ranking{0, 1, 2};
  CHECK(std::fabs(hits / double(draws) - 0.25) <= 0.01);

  CHECK(sample_ranking(identity, column({4.0}), 10, rng) == Ranking{0});
  CHECK(sample_ranking(identity, docs, 2, rng).size() == 2);
  CHECK_THROWS_AS(sample_ranking(identity, FeatureMatrix{}, 3, rng), std::invalid_argument);
}

TEST_CASE("sample_ranking survives extreme score gaps") {
  Rng rng(2);
  const std::vector<double> scores{0.0, -2000.0, -4000.0, 1000.0};
  for (int i = 0; i < 50; ++i) CHECK(sample_ranking_from_scores(scores, 4, rng) == Ranking{3, 0, 1, 2});
}

TEST_CASE("sampled frequencies match log_ranking_probability") {
  Rng rng(13);
  for (std::size_t n : {2u, 3u, 4u}) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> scores(n);
    for (auto& s : scores) s = g(rng);
    auto rankings = oracle::all_rankings(n, n);
    std::map<Ranking, double> counts;
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) counts[sample_ranking_from_scores(scores, n, rng)] += 1;
    std::vector<double> obs, expected;
    for (const auto& r : rankings) {
      obs.push_back(counts[r]);
      expected.push_back(std::exp(log_ranking_probability_from_scores(scores, r)));
    }
    CHECK(oracle::chi_square_p(obs, expected, draws) > 0.001);
  }
}

TEST_CASE("log_ranking_probability") {
  const LinearRanker identity({1.0});
  const auto docs = column({std::log(2.0), 0.0, 0.0});
  CHECK(log_ranking_probability(identity, {0, 1, 2}, docs) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK(log_ranking_probability(identity, {0}, column({3.0})) == 0.0);

  const auto equal = column({1.0, 1.0, 1.0});
  double total = 0.0;
  for (const auto& r : oracle::all_rankings(3, 3)) total += std::exp(log_ranking_probability(identity, r, equal));
  CHECK(std::fabs(total - 1.0) <= 1e-12);

  CHECK_THROWS_AS(log_ranking_probability(identity, {0, 0}, docs), std::invalid_argument);
  CHECK_THROWS_AS(log_ranking_probability(identity, {3}, docs), std::invalid_argument);
  CHECK_THROWS_AS(log_ranking_probability(identity, {}, docs), std::invalid_argument);
}

TEST_CASE("Plackett-Luce probabilities normalize exhaustively and match the direct product") {
  Rng rng(17);
  std::normal_distribution<double> g(0.0, 2.0);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<double> scores(n);
    for (auto& s : scores) s = g(rng);
    for (std::size_t k = 1; k <= n; ++k) {
      double total = 0.0;
      for (const auto& r : oracle::all_rankings(n, k)) {
        const double p = std::exp(log_ranking_probability_from_scores(scores, r));
        CHECK(p == doctest::Approx(oracle::plackett_luce_probability(scores, r)).epsilon(1e-12));
        total += p;
      }
      CHECK(std::fabs(total - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("pair_preference_probability") {
  CHECK(pair_preference_probability_from_scores(0.3, 0.3) == 0.5);
  CHECK(pair_preference_probability_from_scores(1.0, 0.0) ==
        doctest::Approx(std::exp(1.0) / (1.0 + std::exp(1.0))).epsilon(1e-14));
  CHECK(pair_preference_probability_from_scores(1.0, 0.0) == doctest::Approx(0.73106).epsilon(1e-5));
  const double big = pair_preference_probability_from_scores(20.0, 0.0);
  CHECK(std::isfinite(big));
  CHECK(std::fabs(big - 1.0) <= 1e-8);
  CHECK(pair_preference_probability_from_scores(-800.0, 800.0) >= 0.0);

  Rng rng(19);
  std::normal_distribution<double> g(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = g(rng), b = g(rng);
    CHECK(std::fabs(pair_preference_probability_from_scores(a, b) +
                    pair_preference_probability_from_scores(b, a) - 1.0) <= 1e-15);
  }
  const std::vector<double> di{1.0, 0.0}, dj{0.0, 0.0}, bad{1.0};
  CHECK(pair_preference_probability(LinearRanker({1.0, 5.0}), di, dj) ==
        doctest::Approx(0.7310585786300049));
  CHECK_THROWS_AS(pair_preference_probability(LinearRanker({1.0, 5.0}), di, bad), std::invalid_argument);
}

TEST_CASE("sample_unit_sphere") {
  Rng rng(23);
  CHECK_THROWS_AS(sample_unit_sphere(0, rng), std::invalid_argument);

  int plus = 0;
  for (int i = 0; i < 10000; ++i) {
    auto v = sample_unit_sphere(1, rng);
    REQUIRE((v[0] == 1.0 || v[0] == -1.0));
    plus += v[0] > 0;
  }
  CHECK(std::fabs(plus / 10000.0 - 0.5) <= 0.02);

  for (int i = 0; i < 100; ++i) {
    auto v = sample_unit_sphere(136, rng);
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    CHECK(std::fabs(std::sqrt(n2) - 1.0) <= 1e-12);
  }

  std::vector<double> sum(3, 0.0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    auto v = sample_unit_sphere(3, rng);
    for (int f = 0; f < 3; ++f) sum[f] += v[f];
  }
  for (double s : sum) CHECK(std::fabs(s / draws) <= 0.01);
}
