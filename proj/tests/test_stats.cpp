#include <cmath>
#include <fstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "cloudburst/rng.hpp"
#include "cloudburst/stats.hpp"

using namespace cloudburst;
using json = nlohmann::json;

namespace {

// Brute-force sum-of-squares route, kept independent of the implementation.
double anova_f_brute_force(const std::vector<std::vector<double>>& groups) {
  double grand_sum = 0.0;
  std::size_t n = 0;
  for (const auto& g : groups) {
    for (double x : g) grand_sum += x;
    n += g.size();
  }
  const double grand_mean = grand_sum / n;
  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    double gs = 0.0;
    for (double x : g) gs += x;
    const double gm = gs / g.size();
    ssb += g.size() * (gm - grand_mean) * (gm - grand_mean);
    for (double x : g) ssw += (x - gm) * (x - gm);
  }
  return (ssb / (groups.size() - 1)) / (ssw / (n - groups.size()));
}

}  // namespace

TEST_CASE("anova trivial and hand-computed cases") {
  // Identical groups: no between-group variance at all.
  auto result = stats::one_way_anova({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  CHECK(result.statistic == doctest::Approx(0.0));
  CHECK(result.p_value == doctest::Approx(1.0));

  // {1,2} vs {5,6}: between SS = 16, within MS = 0.5, so F = 32.
  const std::vector<std::vector<double>> groups = {{1, 2}, {5, 6}};
  CHECK(anova_f_brute_force(groups) == doctest::Approx(32.0));
  result = stats::one_way_anova(groups);
  CHECK(result.statistic == doctest::Approx(32.0));
  CHECK(result.df1 == doctest::Approx(1));
  CHECK(result.df2 == doctest::Approx(2));
}

TEST_CASE("anova error paths") {
  CHECK_THROWS_AS(stats::one_way_anova({{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(stats::one_way_anova({{1.0}, {2.0, 3.0}}),
                  std::invalid_argument);
  // Degenerate within-group variance with distinct means.
  CHECK_THROWS_AS(stats::one_way_anova({{1.0, 1.0}, {2.0, 2.0}}),
                  std::domain_error);
}

TEST_CASE("anova shift and scale invariance") {
  Rng rng(99);
  std::vector<std::vector<double>> groups(3);
  for (auto& g : groups) {
    for (int i = 0; i < 12; ++i) g.push_back(rng.normal(1.0, 0.5));
  }
  const double f0 = stats::one_way_anova(groups).statistic;
  auto shifted = groups;
  auto scaled = groups;
  for (auto& g : shifted) {
    for (double& x : g) x += 123.456;
  }
  for (auto& g : scaled) {
    for (double& x : g) x *= 7.5;
  }
  CHECK(stats::one_way_anova(shifted).statistic == doctest::Approx(f0).epsilon(1e-9));
  CHECK(stats::one_way_anova(scaled).statistic == doctest::Approx(f0).epsilon(1e-9));
}

TEST_CASE("kruskal-wallis hand-computed and invariance") {
  // Ranks 1..6, rank sums 6 and 15: H = 54/14.
  auto result = stats::kruskal_wallis({{1, 2, 3}, {4, 5, 6}});
  CHECK(result.statistic == doctest::Approx(3.857142857).epsilon(1e-9));

  // Identical values everywhere: H = 0, p = 1, not an error.
  result = stats::kruskal_wallis({{2, 2}, {2, 2, 2}});
  CHECK(result.statistic == doctest::Approx(0.0));
  CHECK(result.p_value == doctest::Approx(1.0));

  // Rank-based: any strictly monotone transform leaves H unchanged.
  Rng rng(7);
  std::vector<std::vector<double>> groups(3);
  for (auto& g : groups) {
    for (int i = 0; i < 15; ++i) g.push_back(rng.uniform(0.0, 2.0));
  }
  const double h0 = stats::kruskal_wallis(groups).statistic;
  auto transformed = groups;
  for (auto& g : transformed) {
    for (double& x : g) x = std::exp(3.0 * x) + x * x * x;
  }
  CHECK(stats::kruskal_wallis(transformed).statistic ==
        doctest::Approx(h0).epsilon(1e-12));
}

TEST_CASE("welch t trivial and near-degenerate cases") {
  auto result = stats::two_sample_t({1, 2, 3}, {1, 2, 3});
  CHECK(result.statistic == doctest::Approx(0.0));
  CHECK(result.p_value == doctest::Approx(1.0));

  CHECK_THROWS_AS(stats::two_sample_t({1.0, 1.0}, {2.0, 2.0}),
                  std::domain_error);

  // Near-degenerate separation must still resolve to an extreme p.
  result = stats::two_sample_t({0, 0, 0, 1e-12}, {1, 1, 1, 1 + 1e-12});
  CHECK(result.p_value < 1e-6);
}

TEST_CASE("statistics match the high-precision reference fixtures") {
  std::ifstream in(std::string(CLOUDBURST_SOURCE_DIR) +
                   "/tests/fixtures/stat_reference.json");
  REQUIRE(in.good());
  json doc;
  in >> doc;
  const auto& fixtures = doc.at("fixtures");
  REQUIRE(fixtures.size() >= 10);

  auto check_sig_digits = [](double actual, double expected, int digits) {
    if (expected == 0.0) {
      CHECK(std::fabs(actual) < 1e-12);
      return;
    }
    const double rel = std::fabs(actual - expected) / std::fabs(expected);
    CHECK(rel < 0.5 * std::pow(10.0, -digits + 1));
  };

  for (const auto& fx : fixtures) {
    const std::string kind = fx.at("test");
    stats::TestResult result;
    if (kind == "anova") {
      result = stats::one_way_anova(
          fx.at("groups").get<std::vector<std::vector<double>>>());
    } else if (kind == "kruskal") {
      result = stats::kruskal_wallis(
          fx.at("groups").get<std::vector<std::vector<double>>>());
    } else {
      result = stats::two_sample_t(fx.at("a").get<std::vector<double>>(),
                                   fx.at("b").get<std::vector<double>>());
    }
    INFO("fixture ", fx.at("name").get<std::string>());
    check_sig_digits(result.statistic, fx.at("statistic").get<double>(), 4);
    check_sig_digits(result.p_value, fx.at("p").get<double>(), 4);
  }
}

TEST_CASE("distribution tails stay within [0, 1] and order correctly") {
  CHECK(stats::f_upper_tail(0.0, 2, 10) == doctest::Approx(1.0));
  CHECK(stats::chi_squared_upper_tail(0.0, 3) == doctest::Approx(1.0));
  double prev = 1.0;
  for (double f : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double p = stats::f_upper_tail(f, 2, 30);
    CHECK(p >= 0.0);
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("pearson correlation basics") {
  CHECK(stats::pearson({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(stats::pearson({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(stats::pearson({1, 2}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(stats::pearson({1, 2, 3}, {5, 5, 5}), std::domain_error);
}
