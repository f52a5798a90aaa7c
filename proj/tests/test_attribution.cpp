#include <cmath>

#include <doctest.h>

#include "cloudburst/attribution.hpp"
#include "cloudburst/config.hpp"
#include "cloudburst/rng.hpp"

using namespace cloudburst;

namespace {

CallbackEvent synthetic_event(int index) {
  CallbackEvent ev;
  ev.beacon_id = "bcn-synthetic";
  ev.index_in_trace = index;
  ev.iam.actions = index % 7;
  ev.churn.t = index;
  return ev;
}

CasBreakdown breakdown_with(double value) {
  CasBreakdown b;
  b.cas = value;
  return b;
}

}  // namespace

TEST_CASE("uniform prior over ten candidates") {
  const PosteriorState s = make_uniform_posterior();
  CHECK(s.candidates.size() == 10);
  CHECK(s.probabilities.size() == 10);
  for (double p : s.probabilities) CHECK(p == doctest::Approx(0.100));
  CHECK(s.callbacks_consumed == 0);
}

TEST_CASE("high-score updates compound toward certainty") {
  AttributionParams params;  // gamma defaults to 0.9
  PosteriorState s = make_uniform_posterior(params);
  for (int i = 0; i < 50; ++i) {
    s = update_posterior(s, synthetic_event(i), breakdown_with(0.9), params);
  }
  CHECK(s.true_actor_probability() > 0.99);
  CHECK(s.callbacks_consumed == 50);
}

TEST_CASE("posterior stays on the simplex through arbitrary updates") {
  Rng rng(314);
  AttributionParams params;
  PosteriorState s = make_uniform_posterior(params);
  for (int i = 0; i < 500; ++i) {
    s = update_posterior(s, synthetic_event(i), breakdown_with(rng.uniform()),
                         params);
    double sum = 0.0;
    for (double p : s.probabilities) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("no-information update leaves the simplex point fixed") {
  AttributionParams params;
  params.gamma = 0.0;       // true-actor ratio becomes 1
  params.decoy_low = 1.0;   // decoy ratios become 1
  params.decoy_high = 1.0;
  PosteriorState s = make_uniform_posterior(params);
  s.probabilities = {0.3, 0.2, 0.1, 0.05, 0.05, 0.05, 0.05, 0.05, 0.05, 0.1};
  const PosteriorState next =
      update_posterior(s, synthetic_event(1), breakdown_with(0.7), params);
  for (std::size_t i = 0; i < s.probabilities.size(); ++i) {
    CHECK(next.probabilities[i] == doctest::Approx(s.probabilities[i]));
  }
}

TEST_CASE("decoy draws are deterministic in the evidence hash") {
  AttributionParams params;
  const PosteriorState s = make_uniform_posterior(params);
  const auto a = update_posterior(s, synthetic_event(5), breakdown_with(0.4), params);
  const auto b = update_posterior(s, synthetic_event(5), breakdown_with(0.4), params);
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
    CHECK(a.probabilities[i] == b.probabilities[i]);
  }
  // Different evidence, different decoy pattern.
  const auto c = update_posterior(s, synthetic_event(6), breakdown_with(0.4), params);
  bool differs = false;
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
    if (a.probabilities[i] != c.probabilities[i]) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("confidence accumulator is monotone and hits trivial cases") {
  CHECK(confidence_after({1.0}, 1.0) == doctest::Approx(1.0));
  std::vector<double> values;
  Rng rng(11);
  double prev = 0.0;
  for (int i = 0; i < 100; ++i) {
    values.push_back(rng.uniform());
    const double conf = confidence_after(values, 0.55);
    CHECK(conf >= prev - 1e-12);
    CHECK(conf <= 1.0);
    prev = conf;
  }
}

TEST_CASE("single perfect callback detects immediately") {
  AttributionParams params;
  params.rho = 1.0;
  std::vector<CallbackEvent> events = {synthetic_event(0)};
  std::vector<CasBreakdown> scores = {breakdown_with(1.0 - 1e-12)};
  const AttributionTrace trace = run_trace(events, scores, params);
  REQUIRE(trace.ctd.has_value());
  CHECK(*trace.ctd == 1);
  CHECK(trace.confidence_series.front() >= params.threshold);
}

TEST_CASE("measure_ctd on the default fleet") {
  const Config config = default_config();
  const auto fleet = generate_fleet(42, payflow_context());
  AttributionParams attr = config.attribution;
  // A perfect accumulator on real traces still reports a finite count.
  const auto ctd = measure_ctd(fleet.front(), default_profile(AttackerLevel::Naive),
                               7, 0.85, attr, config.simulation, config.weights,
                               config.fidelity, config.multicloud);
  REQUIRE(ctd.has_value());
  CHECK(*ctd >= 1);
  CHECK(*ctd <= attr.ctd_max_callbacks);
  CHECK_THROWS_AS(
      measure_ctd(fleet.front(), default_profile(AttackerLevel::Naive), 7, 1.5,
                  attr, config.simulation, config.weights, config.fidelity,
                  config.multicloud),
      std::invalid_argument);
}

TEST_CASE("correlation requires data and variance") {
  CHECK(cas_posterior_correlation({0.1, 0.2, 0.3, 0.4}, {0.2, 0.4, 0.6, 0.8}) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(cas_posterior_correlation({0.1, 0.2}, {0.3, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cas_posterior_correlation({0.1, 0.2, 0.3}, {0.5, 0.5, 0.5}),
                  std::domain_error);
}

TEST_CASE("trace CSV has one row per callback") {
  AttributionParams params;
  std::vector<CallbackEvent> events;
  std::vector<CasBreakdown> scores;
  for (int i = 0; i < 5; ++i) {
    events.push_back(synthetic_event(i));
    scores.push_back(breakdown_with(0.3 + 0.1 * i));
  }
  const AttributionTrace trace = run_trace(events, scores, params);
  CHECK(trace.posterior_series.size() == 5);
  CHECK(trace.confidence_series.size() == 5);
  const std::string csv = trace_to_csv(trace);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.rfind("index,cas,posterior,confidence\n", 0) == 0);
}
