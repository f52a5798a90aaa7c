#include <cmath>
#include <algorithm>
#include <map>

#include <doctest.h>

#include "cloudburst/adversary.hpp"
#include "cloudburst/stats.hpp"

using namespace cloudburst;

namespace {

std::vector<CallbackEvent> big_sample(AttackerLevel level, std::size_t target) {
  const auto fleet = generate_fleet(42, payflow_context());
  const AttackerProfile profile = default_profile(level);
  std::vector<CallbackEvent> events;
  std::uint64_t seed = 1000;
  while (events.size() < target) {
    auto chunk = simulate_callbacks(fleet, profile, 1e6, seed++,
                                    default_simulation_params());
    events.insert(events.end(), chunk.begin(), chunk.end());
  }
  return events;
}

}  // namespace

TEST_CASE("default profiles carry the published behavioural parameters") {
  const AttackerProfile naive = default_profile(AttackerLevel::Naive);
  CHECK(naive.p_tor == doctest::Approx(0.15));
  CHECK(naive.p_vpn == doctest::Approx(0.30));
  CHECK(naive.p_residential == doctest::Approx(0.05));
  CHECK(naive.rotation_rate == doctest::Approx(0.05));
  CHECK(naive.dwell_mean_h == doctest::Approx(2.0));
  CHECK(naive.sdk == SdkClass::Curl);

  const AttackerProfile advanced = default_profile(AttackerLevel::Advanced);
  CHECK(advanced.p_tor == doctest::Approx(0.45));
  CHECK(advanced.p_vpn == doctest::Approx(0.40));
  CHECK(advanced.p_residential == doctest::Approx(0.20));
  CHECK(advanced.rotation_rate == doctest::Approx(0.25));
  CHECK(advanced.dwell_mean_h == doctest::Approx(8.0));
  CHECK(advanced.sdk == SdkClass::ScriptedSdk);

  const AttackerProfile apt = default_profile(AttackerLevel::Apt);
  CHECK(apt.p_tor == doctest::Approx(0.70));
  CHECK(apt.p_vpn == doctest::Approx(0.25));
  CHECK(apt.p_residential == doctest::Approx(0.50));
  CHECK(apt.rotation_rate == doctest::Approx(0.65));
  CHECK(apt.dwell_mean_h == doctest::Approx(72.0));
  CHECK(apt.sdk == SdkClass::NativeSdk);
}

TEST_CASE("routing flag frequencies converge to the profile probabilities") {
  const auto events = big_sample(AttackerLevel::Naive, 10000);
  REQUIRE(events.size() >= 10000);
  double tor = 0, vpn = 0, residential = 0, rotated = 0;
  for (const auto& ev : events) {
    tor += ev.routing.tor;
    vpn += ev.routing.vpn;
    residential += ev.routing.residential;
    rotated += ev.routing.rotated;
  }
  const double n = static_cast<double>(events.size());
  CHECK(std::fabs(tor / n - 0.15) < 0.02);
  CHECK(std::fabs(vpn / n - 0.30) < 0.02);
  CHECK(std::fabs(residential / n - 0.05) < 0.02);
  CHECK(std::fabs(rotated / n - 0.05) < 0.02);
}

TEST_CASE("apt dwell times average to the published mean") {
  const auto events = big_sample(AttackerLevel::Apt, 10000);
  // One dwell per engagement: average the per-pair exposure offsets.
  std::map<std::string, double> dwell_by_pair;
  for (const auto& ev : events) {
    dwell_by_pair[ev.beacon_id + std::to_string(ev.exposure_time_h)] =
        ev.exposure_time_h;
  }
  std::vector<double> dwells;
  for (const auto& [key, dwell] : dwell_by_pair) dwells.push_back(dwell);
  REQUIRE(dwells.size() > 2000);
  CHECK(std::fabs(stats::mean(dwells) - 72.0) < 3.0);
}

TEST_CASE("no callbacks before the dwell elapses") {
  const auto fleet = generate_fleet(42, payflow_context());
  // Horizon shorter than any plausible dwell draw leaves the fleet silent.
  AttackerProfile apt = default_profile(AttackerLevel::Apt);
  const auto events = simulate_callbacks(fleet, apt, 1e-6, 5,
                                         default_simulation_params());
  CHECK(events.empty());
}

TEST_CASE("event streams are pure functions of their inputs") {
  const auto fleet = generate_fleet(42, payflow_context());
  const AttackerProfile profile = default_profile(AttackerLevel::Advanced);
  const auto a = simulate_callbacks(fleet, profile, 168, 7);
  const auto b = simulate_callbacks(fleet, profile, 168, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].beacon_id == b[i].beacon_id);
    CHECK(a[i].event_time_h == b[i].event_time_h);
    CHECK(a[i].iam.actions == b[i].iam.actions);
    CHECK(a[i].routing.tor == b[i].routing.tor);
  }
  const auto c = simulate_callbacks(fleet, profile, 168, 8);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) {
    differs = a[i].event_time_h != c[i].event_time_h;
  }
  CHECK(differs);
}

TEST_CASE("churn counters never decrease along a beacon's stream") {
  const auto fleet = generate_fleet(42, payflow_context());
  for (AttackerLevel level : kAllLevels) {
    const auto events = simulate_callbacks(fleet, default_profile(level), 400, 11);
    std::map<std::string, const CallbackEvent*> last;
    for (const auto& ev : events) {
      const auto it = last.find(ev.beacon_id);
      if (it != last.end()) {
        CHECK(ev.event_time_h >= it->second->event_time_h);
        CHECK(ev.churn.restarts >= it->second->churn.restarts);
        CHECK(ev.churn.scale_events >= it->second->churn.scale_events);
        CHECK(ev.evidence.distinct_providers >=
              it->second->evidence.distinct_providers);
      }
      last[ev.beacon_id] = &ev;
      CHECK(ev.event_time_h >= ev.exposure_time_h);
      CHECK(ev.exposure_time_h >= 0.0);
    }
  }
}

TEST_CASE("default campaign lands in the expected size band") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 42ULL}) {
    const auto events = default_campaign(seed);
    CHECK(events.size() >= 180);
    CHECK(events.size() <= 230);
    for (const auto& ev : events) {
      CHECK(is_applicable(ev.vector, ev.provider));
    }
  }
  const auto a = default_campaign(1);
  const auto b = default_campaign(1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].event_time_h == b[i].event_time_h);
    CHECK(a[i].beacon_id == b[i].beacon_id);
  }
}

TEST_CASE("probe traces respect cadence and cap") {
  const auto fleet = generate_fleet(42, payflow_context());
  const auto events = simulate_probe_trace(
      fleet.front(), default_profile(AttackerLevel::Naive), 4.0, 30, 99);
  CHECK(events.size() == 30);
  for (std::size_t i = 1; i < events.size(); ++i) {
    CHECK(events[i].event_time_h > events[i - 1].event_time_h);
    CHECK(events[i].churn.restarts >= events[i - 1].churn.restarts);
  }
}

TEST_CASE("event export formats") {
  const auto events = default_campaign(5);
  const std::string csv = events_to_csv(events);
  CHECK(csv.find("beacon_id,vector,provider") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(events.size()) + 1);
  const std::string jsonl = events_to_jsonl(events);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') ==
        static_cast<long>(events.size()));
}
