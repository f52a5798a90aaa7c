#include "cloudburst/adversary.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cloudburst/digest.hpp"
#include "cloudburst/rng.hpp"

namespace cloudburst {

namespace {

using json = nlohmann::ordered_json;

constexpr double kDefaultHorizonH = 168.0;

std::string override_key(VectorClass v, CloudProvider p) {
  return std::string(to_string(v)) + "/" + std::string(to_string(p));
}

const TelemetryPrior& telemetry_for(const SimulationParams& params,
                                    VectorClass v, CloudProvider p) {
  const auto it = params.telemetry_overrides.find(override_key(v, p));
  if (it != params.telemetry_overrides.end()) return it->second;
  return params.telemetry[index_of(v)];
}

int binomial(Rng& rng, int trials, double p) {
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    if (rng.bernoulli(p)) ++hits;
  }
  return hits;
}

/// Walks one engagement's activity clock and fills events at requested ages.
class PairSampler {
 public:
  PairSampler(const BeaconInstance& beacon, const AttackerProfile& profile,
              const SimulationParams& params, Rng& rng)
      : beacon_(beacon), profile_(profile), params_(params), rng_(rng),
        prior_(telemetry_for(params, beacon.vector, beacon.provider)) {
    const double risk = property_profile(beacon.vector).inherent_ephemeral_risk;
    restart_rate_ = params.churn_restart_factor * risk;
    scale_rate_ = params.churn_scale_factor * risk;
    bonus_p_ = params.level_action_bonus_p[index_of(profile.level)];
    // The attacker either pivots through a second account for this artifact
    // or never does; the flag persists across the engagement.
    pair_cross_account_ = rng.bernoulli(prior_.cross_account_p);
    providers_seen_ = {beacon.provider};
  }

  /// Ages must be requested in non-decreasing order.
  CallbackEvent at_age(double age, double exposure_time_h) {
    restarts_ += rng_.poisson(restart_rate_ * (age - prev_age_));
    scale_events_ += rng_.poisson(scale_rate_ * (age - prev_age_));
    prev_age_ = age;

    CallbackEvent ev;
    ev.beacon_id = beacon_.id;
    ev.vector = beacon_.vector;
    ev.provider = beacon_.provider;
    ev.level = profile_.level;
    ev.sdk = profile_.sdk;
    ev.exposure_time_h = exposure_time_h;
    ev.event_time_h = exposure_time_h + age;

    ev.routing.tor = rng_.bernoulli(profile_.p_tor);
    ev.routing.vpn = rng_.bernoulli(profile_.p_vpn);
    ev.routing.residential = rng_.bernoulli(profile_.p_residential);
    ev.routing.rotated = rng_.bernoulli(profile_.rotation_rate);
    if (rng_.bernoulli(params_.cloud_exit_p[index_of(beacon_.vector)])) {
      ev.routing.exit_provider =
          kAllProviders[static_cast<std::size_t>(rng_.uniform_int(0, 3))];
      providers_seen_.insert(*ev.routing.exit_provider);
    }

    ev.iam.actions = rng_.uniform_int(prior_.actions_min, prior_.actions_max);
    if (rng_.bernoulli(bonus_p_)) ev.iam.actions += 1;
    ev.iam.principals = rng_.bernoulli(prior_.multi_principal_p) ? 2 : 1;
    ev.iam.cross_account = pair_cross_account_;

    ev.churn.t = age;
    ev.churn.restarts = restarts_;
    ev.churn.scale_events = scale_events_;
    ev.churn.delta = params_.delta;

    ev.evidence.distinct_providers = static_cast<int>(providers_seen_.size());
    ev.evidence.cloud_exit = ev.routing.exit_provider.has_value();
    return ev;
  }

 private:
  const BeaconInstance& beacon_;
  const AttackerProfile& profile_;
  const SimulationParams& params_;
  Rng& rng_;
  TelemetryPrior prior_;
  double restart_rate_ = 0.0;
  double scale_rate_ = 0.0;
  double bonus_p_ = 0.0;
  bool pair_cross_account_ = false;
  std::set<CloudProvider> providers_seen_;
  int restarts_ = 0;
  int scale_events_ = 0;
  double prev_age_ = 0.0;
};

/// Everything one (beacon, profile) engagement emits, in time order.
std::vector<CallbackEvent> simulate_pair(const BeaconInstance& beacon,
                                         const AttackerProfile& profile,
                                         double horizon_h, std::uint64_t seed,
                                         const SimulationParams& params) {
  Rng rng(seed);
  const double dwell = rng.exponential(profile.dwell_mean_h);
  const int count = params.engagement_min +
                    binomial(rng, params.engagement_extra_trials,
                             params.engagement_extra_p);

  std::vector<double> ages(static_cast<std::size_t>(count));
  for (double& a : ages) a = rng.uniform(0.0, params.window_h);
  std::sort(ages.begin(), ages.end());

  PairSampler sampler(beacon, profile, params, rng);
  const double exposure = beacon.created_at_h + dwell;

  std::vector<CallbackEvent> events;
  events.reserve(ages.size());
  for (double age : ages) {
    CallbackEvent ev = sampler.at_age(age, exposure);
    if (ev.event_time_h <= horizon_h) {
      ev.index_in_trace = static_cast<int>(events.size());
      events.push_back(std::move(ev));
    }
  }
  return events;
}

}  // namespace

void AttackerProfile::validate() const {
  for (double p : {p_tor, p_vpn, p_residential, rotation_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("attacker probabilities must lie in [0, 1]");
    }
  }
  if (dwell_mean_h <= 0.0) {
    throw ConfigError("dwell_mean_h must be positive");
  }
}

AttackerProfile default_profile(AttackerLevel level) {
  AttackerProfile p;
  p.level = level;
  switch (level) {
    case AttackerLevel::Naive:
      p.p_tor = 0.15; p.p_vpn = 0.30; p.p_residential = 0.05;
      p.rotation_rate = 0.05; p.dwell_mean_h = 2.0; p.sdk = SdkClass::Curl;
      break;
    case AttackerLevel::Advanced:
      p.p_tor = 0.45; p.p_vpn = 0.40; p.p_residential = 0.20;
      p.rotation_rate = 0.25; p.dwell_mean_h = 8.0;
      p.sdk = SdkClass::ScriptedSdk;
      break;
    case AttackerLevel::Apt:
      p.p_tor = 0.70; p.p_vpn = 0.25; p.p_residential = 0.50;
      p.rotation_rate = 0.65; p.dwell_mean_h = 72.0;
      p.sdk = SdkClass::NativeSdk;
      break;
  }
  return p;
}

SimulationParams default_simulation_params() {
  SimulationParams p;
  p.telemetry[index_of(VectorClass::S3PresignedUrl)] = {3, 9, 0.20, 0.16};
  p.telemetry[index_of(VectorClass::ContainerImage)] = {2, 8, 0.40, 0.28};
  p.telemetry[index_of(VectorClass::IamCanaryRole)] = {5, 11, 0.40, 0.30};
  p.telemetry[index_of(VectorClass::TerraformModule)] = {4, 11, 0.38, 0.32};
  p.telemetry[index_of(VectorClass::K8sSecret)] = {5, 11, 0.35, 0.30};
  p.telemetry[index_of(VectorClass::ServerlessTrigger)] = {2, 9, 0.20, 0.16};
  // Provider-specific telemetry depth: audit-log richness differs per
  // provider for the identity-plane vectors.
  p.telemetry_overrides["iam_canary_role/aws"] = {7, 13, 0.40, 0.30};
  p.telemetry_overrides["iam_canary_role/azure"] = {7, 13, 0.45, 0.35};
  p.telemetry_overrides["iam_canary_role/gcp"] = {3, 9, 0.35, 0.30};
  p.telemetry_overrides["iam_canary_role/oci"] = {3, 9, 0.30, 0.25};
  p.telemetry_overrides["k8s_secret/aws"] = {1, 6, 0.20, 0.05};
  p.cloud_exit_p[index_of(VectorClass::S3PresignedUrl)] = 0.60;
  p.cloud_exit_p[index_of(VectorClass::ContainerImage)] = 0.58;
  p.cloud_exit_p[index_of(VectorClass::IamCanaryRole)] = 0.52;
  p.cloud_exit_p[index_of(VectorClass::TerraformModule)] = 0.62;
  p.cloud_exit_p[index_of(VectorClass::K8sSecret)] = 0.42;
  p.cloud_exit_p[index_of(VectorClass::ServerlessTrigger)] = 0.52;
  p.level_action_bonus_p = {0.0, 0.35, 0.61};
  return p;
}

std::vector<CallbackEvent> simulate_callbacks(
    const std::vector<BeaconInstance>& fleet, const AttackerProfile& profile,
    double horizon_h, std::uint64_t seed, const SimulationParams& params) {
  if (fleet.empty()) {
    throw std::invalid_argument("simulate_callbacks: fleet is empty");
  }
  if (horizon_h <= 0.0) {
    throw std::invalid_argument("simulate_callbacks: horizon must be positive");
  }
  profile.validate();

  std::vector<CallbackEvent> all;
  for (const auto& beacon : fleet) {
    const std::uint64_t child = derive_seed(
        seed, {fnv1a64(beacon.id),
               static_cast<std::uint64_t>(index_of(profile.level))});
    auto events = simulate_pair(beacon, profile, horizon_h, child, params);
    all.insert(all.end(), events.begin(), events.end());
  }
  return all;
}

std::vector<CallbackEvent> default_campaign(
    std::uint64_t seed, const SimulationParams& params,
    const std::array<AttackerProfile, kLevelCount>& profiles) {
  const auto fleet = generate_fleet(seed, payflow_context());
  std::vector<CallbackEvent> all;
  for (const auto& profile : profiles) {
    auto events = simulate_callbacks(fleet, profile, kDefaultHorizonH, seed, params);
    all.insert(all.end(), events.begin(), events.end());
  }
  return all;
}

std::vector<CallbackEvent> simulate_probe_trace(const BeaconInstance& beacon,
                                                const AttackerProfile& profile,
                                                double mean_gap_h,
                                                int max_callbacks,
                                                std::uint64_t seed,
                                                const SimulationParams& params) {
  if (mean_gap_h <= 0.0 || max_callbacks < 1) {
    throw std::invalid_argument("simulate_probe_trace: bad probe parameters");
  }
  profile.validate();
  Rng rng(seed);
  const double dwell = rng.exponential(profile.dwell_mean_h);
  PairSampler sampler(beacon, profile, params, rng);
  const double exposure = beacon.created_at_h + dwell;

  std::vector<CallbackEvent> events;
  events.reserve(static_cast<std::size_t>(max_callbacks));
  double age = 0.0;
  for (int i = 0; i < max_callbacks; ++i) {
    age += rng.exponential(mean_gap_h);
    CallbackEvent ev = sampler.at_age(age, exposure);
    ev.index_in_trace = i;
    events.push_back(std::move(ev));
  }
  return events;
}

CasBreakdown score_callback(const CallbackEvent& event, const CasWeights& weights,
                            const FidelityParams& fidelity,
                            const MultiCloudParams& multicloud) {
  const double c_f =
      callback_fidelity(event.routing, event.sdk, event.vector, fidelity);
  const double e_p = ephemeral_penalty(event.churn);
  const double i_c = iam_coverage(event.iam);
  const double m_b = multi_cloud_bonus(event.evidence, multicloud);
  return make_breakdown(c_f, e_p, i_c, m_b, weights);
}

std::string events_to_jsonl(const std::vector<CallbackEvent>& events) {
  std::ostringstream out;
  for (const auto& ev : events) {
    json j;
    j["beacon_id"] = ev.beacon_id;
    j["vector"] = to_string(ev.vector);
    j["provider"] = to_string(ev.provider);
    j["level"] = to_string(ev.level);
    j["sdk"] = to_string(ev.sdk);
    j["index"] = ev.index_in_trace;
    j["event_time_h"] = ev.event_time_h;
    j["exposure_time_h"] = ev.exposure_time_h;
    j["routing"] = {{"tor", ev.routing.tor},
                    {"vpn", ev.routing.vpn},
                    {"residential", ev.routing.residential},
                    {"rotated", ev.routing.rotated},
                    {"exit_provider",
                     ev.routing.exit_provider
                         ? std::string(to_string(*ev.routing.exit_provider))
                         : std::string("none")}};
    j["iam"] = {{"actions", ev.iam.actions},
                {"principals", ev.iam.principals},
                {"cross_account", ev.iam.cross_account}};
    j["churn"] = {{"t", ev.churn.t},
                  {"restarts", ev.churn.restarts},
                  {"scale_events", ev.churn.scale_events}};
    j["evidence"] = {{"distinct_providers", ev.evidence.distinct_providers},
                     {"cloud_exit", ev.evidence.cloud_exit}};
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string events_to_csv(const std::vector<CallbackEvent>& events) {
  std::ostringstream out;
  out << "beacon_id,vector,provider,level,sdk,index,event_time_h,"
         "exposure_time_h,tor,vpn,residential,rotated,exit_provider,actions,"
         "principals,cross_account,churn_t,restarts,scale_events,"
         "distinct_providers,cloud_exit\n";
  char buf[64];
  for (const auto& ev : events) {
    std::snprintf(buf, sizeof(buf), "%.4f", ev.event_time_h);
    const std::string t_event = buf;
    std::snprintf(buf, sizeof(buf), "%.4f", ev.exposure_time_h);
    const std::string t_exposure = buf;
    std::snprintf(buf, sizeof(buf), "%.4f", ev.churn.t);
    const std::string t_churn = buf;
    out << ev.beacon_id << ',' << to_string(ev.vector) << ','
        << to_string(ev.provider) << ',' << to_string(ev.level) << ','
        << to_string(ev.sdk) << ',' << ev.index_in_trace << ',' << t_event
        << ',' << t_exposure << ',' << int(ev.routing.tor) << ','
        << int(ev.routing.vpn) << ',' << int(ev.routing.residential) << ','
        << int(ev.routing.rotated) << ','
        << (ev.routing.exit_provider ? to_string(*ev.routing.exit_provider)
                                     : "none")
        << ',' << ev.iam.actions << ',' << ev.iam.principals << ','
        << int(ev.iam.cross_account) << ',' << t_churn << ','
        << ev.churn.restarts << ',' << ev.churn.scale_events << ','
        << ev.evidence.distinct_providers << ',' << int(ev.evidence.cloud_exit)
        << "\n";
  }
  return out.str();
}

}  // namespace cloudburst
