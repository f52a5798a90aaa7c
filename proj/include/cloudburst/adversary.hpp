#ifndef CLOUDBURST_ADVERSARY_HPP
#define CLOUDBURST_ADVERSARY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cloudburst/scoring.hpp"
#include "cloudburst/taxonomy.hpp"
#include "cloudburst/types.hpp"

namespace cloudburst {

/// Behavioural parameters for one sophistication level.
struct AttackerProfile {
  AttackerLevel level = AttackerLevel::Naive;
  double p_tor = 0.15;
  double p_vpn = 0.30;
  double p_residential = 0.05;
  double rotation_rate = 0.05;  // per callback
  double dwell_mean_h = 2.0;
  SdkClass sdk = SdkClass::Curl;

  void validate() const;
};

AttackerProfile default_profile(AttackerLevel level);

/// Vector-dependent IAM telemetry prior: how much identity-plane context a
/// callback against this vector tends to generate.
struct TelemetryPrior {
  int actions_min = 1;
  int actions_max = 6;
  double multi_principal_p = 0.2;
  double cross_account_p = 0.1;
};

struct SimulationParams {
  /// Length of the exploitation window that follows the dwell period.
  double window_h = 36.0;
  /// Callbacks per (beacon, profile) engagement: min + Binomial(trials, p).
  int engagement_min = 2;
  int engagement_extra_trials = 3;
  double engagement_extra_p = 5.0 / 12.0;
  /// Churn process rates per hour, scaled by the vector's inherent risk.
  double churn_restart_factor = 0.30;
  double churn_scale_factor = 0.15;
  double delta = 0.05;
  std::array<TelemetryPrior, kVectorCount> telemetry{};
  /// Per-(vector, provider) telemetry overrides keyed "vector/provider".
  std::map<std::string, TelemetryPrior> telemetry_overrides;
  /// Chance that a callback's exit IP sits in a known cloud range.
  std::array<double, kVectorCount> cloud_exit_p{};
  /// Extra logged action drawn with this probability, by attacker level.
  std::array<double, kLevelCount> level_action_bonus_p{};
};

SimulationParams default_simulation_params();

/// One simulated beacon firing with everything attribution needs.
struct CallbackEvent {
  std::string beacon_id;
  VectorClass vector{};
  CloudProvider provider{};
  AttackerLevel level{};
  SdkClass sdk{};
  int index_in_trace = 0;
  double event_time_h = 0.0;     // hours since beacon deployment
  double exposure_time_h = 0.0;  // dwell end: first hostile use of the pair
  RoutingEvidence routing;
  IamTelemetry iam;
  ChurnState churn;
  CrossProviderEvidence evidence;
};

/**
 * Simulates one profile against a fleet.
 *
 * Per (beacon, profile) pair: an exponential dwell delays first use, the
 * engagement then emits callbacks whose offsets are uniform over the
 * exploitation window (a Poisson-process arrival pattern conditioned on
 * the engagement size). Routing flags are sampled independently per
 * callback from the profile probabilities; IAM telemetry comes from the
 * vector's prior; restart/scale counters accumulate along the pair's
 * activity clock. Events past the horizon are dropped. Deterministic in
 * (fleet, profile, horizon, seed).
 */
std::vector<CallbackEvent> simulate_callbacks(
    const std::vector<BeaconInstance>& fleet, const AttackerProfile& profile,
    double horizon_h, std::uint64_t seed,
    const SimulationParams& params = default_simulation_params());

/// All three default profiles against the default 21-beacon fleet, rate
/// parameters tuned so the expected campaign size is about 205 callbacks.
std::vector<CallbackEvent> default_campaign(
    std::uint64_t seed,
    const SimulationParams& params = default_simulation_params(),
    const std::array<AttackerProfile, kLevelCount>& profiles = {
        default_profile(AttackerLevel::Naive),
        default_profile(AttackerLevel::Advanced),
        default_profile(AttackerLevel::Apt)});

/**
 * Open-ended probe trace for one (beacon, profile) pair: callbacks arrive
 * with exponential gaps of mean `mean_gap_h` until `max_callbacks`, with
 * the same routing/telemetry/churn sampling as simulate_callbacks. Used by
 * the callbacks-to-detect measurement, which needs the engagement to
 * outlast the confidence threshold question.
 */
std::vector<CallbackEvent> simulate_probe_trace(
    const BeaconInstance& beacon, const AttackerProfile& profile,
    double mean_gap_h, int max_callbacks, std::uint64_t seed,
    const SimulationParams& params = default_simulation_params());

/// Scores one callback through the four component models.
CasBreakdown score_callback(const CallbackEvent& event,
                            const CasWeights& weights = {},
                            const FidelityParams& fidelity = {},
                            const MultiCloudParams& multicloud = {});

std::string events_to_jsonl(const std::vector<CallbackEvent>& events);
std::string events_to_csv(const std::vector<CallbackEvent>& events);

}  // namespace cloudburst

#endif  // CLOUDBURST_ADVERSARY_HPP
