#include "cloudburst/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cloudburst/digest.hpp"

namespace cloudburst {

namespace {

using json = nlohmann::ordered_json;

/// Tracks which keys of an object were consumed; leftover keys are hard
/// errors so a typo can never silently fall back to a default.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ConfigError(path_ + ": expected an object");
    }
  }

  const json& at(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    if (it == obj_.end()) {
      throw ConfigError(path_ + ": missing key '" + key + "'");
    }
    return *it;
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError(path_ + ": unknown key '" + key + "'");
      }
    }
  }

  const json& raw() const { return obj_; }
  const std::string& path() const { return path_; }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

json weights_to_json(const CasWeights& w) {
  return {{"w1", w.fidelity}, {"w2", w.iam}, {"w3", w.iam_survival},
          {"w4", w.multi_cloud}};
}

CasWeights weights_from_json(const json& j, const std::string& path) {
  Section s(j, path);
  CasWeights w;
  w.fidelity = number(s.at("w1"), path + ".w1");
  w.iam = number(s.at("w2"), path + ".w2");
  w.iam_survival = number(s.at("w3"), path + ".w3");
  w.multi_cloud = number(s.at("w4"), path + ".w4");
  s.finish();
  return w;
}

json per_vector_to_json(const std::array<double, kVectorCount>& values) {
  json out;
  for (VectorClass v : kAllVectors) {
    out[std::string(to_string(v))] = values[index_of(v)];
  }
  return out;
}

std::array<double, kVectorCount> per_vector_from_json(const json& j,
                                                      const std::string& path) {
  Section s(j, path);
  std::array<double, kVectorCount> values{};
  for (VectorClass v : kAllVectors) {
    const std::string key(to_string(v));
    values[index_of(v)] = number(s.at(key), path + "." + key);
  }
  s.finish();
  return values;
}

json sdk_map_to_json(const std::array<double, kSdkCount>& values) {
  return {{"curl", values[0]}, {"scripted-sdk", values[1]},
          {"native-sdk", values[2]}};
}

std::array<double, kSdkCount> sdk_map_from_json(const json& j,
                                                const std::string& path) {
  Section s(j, path);
  std::array<double, kSdkCount> values{};
  values[0] = number(s.at("curl"), path + ".curl");
  values[1] = number(s.at("scripted-sdk"), path + ".scripted-sdk");
  values[2] = number(s.at("native-sdk"), path + ".native-sdk");
  s.finish();
  return values;
}

json telemetry_to_json(const TelemetryPrior& p) {
  return {{"actions_min", p.actions_min}, {"actions_max", p.actions_max},
          {"multi_principal_p", p.multi_principal_p},
          {"cross_account_p", p.cross_account_p}};
}

TelemetryPrior telemetry_from_json(const json& j, const std::string& path) {
  Section s(j, path);
  TelemetryPrior p;
  p.actions_min = integer(s.at("actions_min"), path + ".actions_min");
  p.actions_max = integer(s.at("actions_max"), path + ".actions_max");
  p.multi_principal_p = number(s.at("multi_principal_p"), path + ".multi_principal_p");
  p.cross_account_p = number(s.at("cross_account_p"), path + ".cross_account_p");
  s.finish();
  return p;
}

json attacker_to_json(const AttackerProfile& a) {
  return {{"tor", a.p_tor}, {"vpn", a.p_vpn}, {"residential", a.p_residential},
          {"rotation", a.rotation_rate}, {"dwell_mean_h", a.dwell_mean_h},
          {"sdk", std::string(to_string(a.sdk))}};
}

AttackerProfile attacker_from_json(const json& j, AttackerLevel level,
                                   const std::string& path) {
  Section s(j, path);
  AttackerProfile a;
  a.level = level;
  a.p_tor = number(s.at("tor"), path + ".tor");
  a.p_vpn = number(s.at("vpn"), path + ".vpn");
  a.p_residential = number(s.at("residential"), path + ".residential");
  a.rotation_rate = number(s.at("rotation"), path + ".rotation");
  a.dwell_mean_h = number(s.at("dwell_mean_h"), path + ".dwell_mean_h");
  a.sdk = sdk_from_string(text(s.at("sdk"), path + ".sdk"));
  s.finish();
  return a;
}

const char* scanner_key(std::size_t j) {
  switch (j) {
    case 0: return "data_classifier";
    case 1: return "iac_static";
    default: return "cnapp_runtime";
  }
}

json decay_prior_to_json(const DecayPrior& p) {
  return {{"c_f_mean", p.c_f_mean}, {"c_f_sd", p.c_f_sd},
          {"i_c_mean", p.i_c_mean}, {"i_c_sd", p.i_c_sd},
          {"m_b_mean", p.m_b_mean}, {"m_b_sd", p.m_b_sd}};
}

DecayPrior decay_prior_from_json(const json& j, const std::string& path) {
  Section s(j, path);
  DecayPrior p;
  p.c_f_mean = number(s.at("c_f_mean"), path + ".c_f_mean");
  p.c_f_sd = number(s.at("c_f_sd"), path + ".c_f_sd");
  p.i_c_mean = number(s.at("i_c_mean"), path + ".i_c_mean");
  p.i_c_sd = number(s.at("i_c_sd"), path + ".i_c_sd");
  p.m_b_mean = number(s.at("m_b_mean"), path + ".m_b_mean");
  p.m_b_sd = number(s.at("m_b_sd"), path + ".m_b_sd");
  s.finish();
  return p;
}

json context_to_json(const ContextProfile& c) {
  return {{"domain", c.domain}, {"org_unit", c.org_unit},
          {"services", c.services}, {"environments", c.environments}};
}

ContextProfile context_from_json(const json& j, const std::string& label,
                                 const std::string& path) {
  Section s(j, path);
  ContextProfile c;
  c.label = label;
  c.domain = text(s.at("domain"), path + ".domain");
  c.org_unit = text(s.at("org_unit"), path + ".org_unit");
  for (const auto& item : s.at("services")) {
    c.services.push_back(text(item, path + ".services[]"));
  }
  for (const auto& item : s.at("environments")) {
    c.environments.push_back(text(item, path + ".environments[]"));
  }
  s.finish();
  return c;
}

}  // namespace

void ExperimentParams::validate() const {
  if (replicas < 1) throw ConfigError("experiment.replicas must be >= 1");
  if (decay_timepoints.empty() || decay_timepoints.front() != 0.0) {
    throw ConfigError("experiment.decay_timepoints must start at 0");
  }
  for (std::size_t i = 1; i < decay_timepoints.size(); ++i) {
    if (decay_timepoints[i] <= decay_timepoints[i - 1]) {
      throw ConfigError("experiment.decay_timepoints must be ascending");
    }
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("experiment.threshold must lie in (0, 1)");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw ConfigError("experiment.kappa must lie in [0, 1]");
  }
}

std::array<PropertyProfile, kVectorCount> Config::default_properties() {
  std::array<PropertyProfile, kVectorCount> props{};
  for (VectorClass v : kAllVectors) props[index_of(v)] = property_profile(v);
  return props;
}

const ContextProfile& Config::context_profile(const std::string& label) const {
  const auto it = contexts.find(label);
  if (it == contexts.end()) {
    throw ConfigError("unknown context profile: " + label);
  }
  return it->second;
}

void Config::validate() const {
  try {
    weights.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("scoring.weights: ") + e.what());
  }
  if (delta <= 0.0) throw ConfigError("scoring.delta must be positive");
  for (const auto& a : attackers) a.validate();
  double weight_sum = 0.0;
  for (const auto& m : scanners) weight_sum += m.weight;
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw ConfigError("scanner weights must sum to 1");
  }
  experiment.validate();
  if (contexts.empty()) throw ConfigError("at least one context is required");
}

Config default_config() {
  Config c;
  // Attribution parameters as committed by the calibration pipeline; the
  // struct defaults (gamma 0.9, rho 0.55) are the uncalibrated baseline.
  c.attribution.gamma = 0.95;
  c.attribution.rho = 0.92;
  c.attribution.ctd_probe_gap_h = 2.5;
  c.experiment.decay_priors = {{
      /* S3PresignedUrl   */ {0.88, 0.04, 0.82, 0.05, 0.45, 0.08},
      /* ContainerImage   */ {0.88, 0.04, 0.84, 0.05, 0.45, 0.08},
      /* IamCanaryRole    */ {0.88, 0.04, 0.86, 0.05, 0.45, 0.08},
      /* TerraformModule  */ {0.88, 0.04, 0.84, 0.05, 0.45, 0.08},
      /* K8sSecret        */ {0.88, 0.04, 0.81, 0.05, 0.42, 0.08},
      /* ServerlessTrigger*/ {0.88, 0.04, 0.85, 0.05, 0.46, 0.08},
  }};
  c.simulation.delta = c.delta;
  return c;
}

std::string config_to_json_text(const Config& c) {
  json root;
  root["schema_version"] = c.schema_version;

  json scoring;
  scoring["weights"] = weights_to_json(c.weights);
  scoring["delta"] = c.delta;
  json fidelity;
  fidelity["base"] = per_vector_to_json(c.fidelity.base);
  fidelity["sdk_shift"] = sdk_map_to_json(c.fidelity.sdk_shift);
  fidelity["penalties"] = {{"tor", c.fidelity.tor_penalty},
                           {"vpn", c.fidelity.vpn_penalty},
                           {"residential", c.fidelity.residential_penalty},
                           {"rotation", c.fidelity.rotation_penalty}};
  fidelity["floor"] = c.fidelity.floor;
  scoring["fidelity"] = fidelity;
  scoring["multi_cloud"] = {{"per_provider", c.multicloud.per_provider},
                            {"cloud_exit", c.multicloud.cloud_exit}};
  root["scoring"] = scoring;

  json attackers;
  attackers["naive"] = attacker_to_json(c.attackers[0]);
  attackers["advanced"] = attacker_to_json(c.attackers[1]);
  attackers["apt"] = attacker_to_json(c.attackers[2]);
  root["attackers"] = attackers;

  json scanners;
  json scanner_weights;
  json base_matrix;
  json sdk_modifier;
  for (std::size_t j = 0; j < kScannerCount; ++j) {
    scanner_weights[scanner_key(j)] = c.scanners[j].weight;
    base_matrix[scanner_key(j)] = per_vector_to_json(c.scanners[j].base);
    sdk_modifier[scanner_key(j)] = sdk_map_to_json(c.scanners[j].sdk_modifier);
  }
  scanners["weights"] = scanner_weights;
  scanners["base_matrix"] = base_matrix;
  scanners["sdk_modifier"] = sdk_modifier;
  root["scanners"] = scanners;

  root["attribution"] = {{"candidates", c.attribution.candidates},
                         {"gamma", c.attribution.gamma},
                         {"rho", c.attribution.rho},
                         {"decoy_low", c.attribution.decoy_low},
                         {"decoy_high", c.attribution.decoy_high},
                         {"ctd_probe_gap_h", c.attribution.ctd_probe_gap_h},
                         {"ctd_max_callbacks", c.attribution.ctd_max_callbacks}};

  json simulation;
  simulation["window_h"] = c.simulation.window_h;
  simulation["engagement"] = {{"min", c.simulation.engagement_min},
                              {"extra_trials", c.simulation.engagement_extra_trials},
                              {"extra_p", c.simulation.engagement_extra_p}};
  simulation["churn"] = {{"restart_factor", c.simulation.churn_restart_factor},
                         {"scale_factor", c.simulation.churn_scale_factor}};
  json telemetry;
  for (VectorClass v : kAllVectors) {
    telemetry[std::string(to_string(v))] =
        telemetry_to_json(c.simulation.telemetry[index_of(v)]);
  }
  simulation["telemetry"] = telemetry;
  json overrides;
  for (const auto& [key, prior] : c.simulation.telemetry_overrides) {
    overrides[key] = telemetry_to_json(prior);
  }
  simulation["telemetry_overrides"] = overrides;
  simulation["cloud_exit_p"] = per_vector_to_json(c.simulation.cloud_exit_p);
  simulation["level_action_bonus_p"] = {
      {"naive", c.simulation.level_action_bonus_p[0]},
      {"advanced", c.simulation.level_action_bonus_p[1]},
      {"apt", c.simulation.level_action_bonus_p[2]}};
  root["simulation"] = simulation;

  json experiment;
  experiment["master_seed"] = c.experiment.master_seed;
  experiment["replicas"] = c.experiment.replicas;
  experiment["horizon_h"] = c.experiment.horizon_h;
  experiment["decay_timepoints"] = c.experiment.decay_timepoints;
  experiment["threshold"] = c.experiment.threshold;
  experiment["context"] = c.experiment.context;
  experiment["iam_churn_attenuation"] = c.experiment.kappa;
  json decay_priors;
  for (VectorClass v : kAllVectors) {
    decay_priors[std::string(to_string(v))] =
        decay_prior_to_json(c.experiment.decay_priors[index_of(v)]);
  }
  experiment["decay_priors"] = decay_priors;
  root["experiment"] = experiment;

  json contexts;
  for (const auto& [label, ctx] : c.contexts) {
    contexts[label] = context_to_json(ctx);
  }
  root["contexts"] = contexts;

  json radar;
  for (VectorClass v : kAllVectors) {
    const PropertyProfile& p = c.properties[index_of(v)];
    radar[std::string(to_string(v))] = {
        {"stealth", p.stealth},
        {"multi_cloud_support", p.multi_cloud_support},
        {"ttd_efficiency", p.ttd_efficiency}};
  }
  root["taxonomy"] = {{"radar", radar}};

  return root.dump(2) + "\n";
}

Config config_from_json_text(const std::string& jtext) {
  json root_json;
  try {
    root_json = json::parse(jtext);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  Section root(root_json, "$");
  Config c;

  const int version = integer(root.at("schema_version"), "$.schema_version");
  if (version != 1) {
    throw ConfigError("unsupported schema_version " + std::to_string(version));
  }

  {
    Section scoring(root.at("scoring"), "$.scoring");
    c.weights = weights_from_json(scoring.at("weights"), "$.scoring.weights");
    c.delta = number(scoring.at("delta"), "$.scoring.delta");
    Section fidelity(scoring.at("fidelity"), "$.scoring.fidelity");
    c.fidelity.base =
        per_vector_from_json(fidelity.at("base"), "$.scoring.fidelity.base");
    c.fidelity.sdk_shift = sdk_map_from_json(fidelity.at("sdk_shift"),
                                             "$.scoring.fidelity.sdk_shift");
    Section penalties(fidelity.at("penalties"), "$.scoring.fidelity.penalties");
    c.fidelity.tor_penalty = number(penalties.at("tor"), "$...tor");
    c.fidelity.vpn_penalty = number(penalties.at("vpn"), "$...vpn");
    c.fidelity.residential_penalty =
        number(penalties.at("residential"), "$...residential");
    c.fidelity.rotation_penalty = number(penalties.at("rotation"), "$...rotation");
    penalties.finish();
    c.fidelity.floor = number(fidelity.at("floor"), "$.scoring.fidelity.floor");
    fidelity.finish();
    Section mc(scoring.at("multi_cloud"), "$.scoring.multi_cloud");
    c.multicloud.per_provider = number(mc.at("per_provider"), "$...per_provider");
    c.multicloud.cloud_exit = number(mc.at("cloud_exit"), "$...cloud_exit");
    mc.finish();
    scoring.finish();
  }

  {
    Section attackers(root.at("attackers"), "$.attackers");
    c.attackers[0] = attacker_from_json(attackers.at("naive"),
                                        AttackerLevel::Naive, "$.attackers.naive");
    c.attackers[1] = attacker_from_json(
        attackers.at("advanced"), AttackerLevel::Advanced, "$.attackers.advanced");
    c.attackers[2] =
        attacker_from_json(attackers.at("apt"), AttackerLevel::Apt, "$.attackers.apt");
    attackers.finish();
  }

  {
    Section scanners(root.at("scanners"), "$.scanners");
    Section weights(scanners.at("weights"), "$.scanners.weights");
    Section base(scanners.at("base_matrix"), "$.scanners.base_matrix");
    Section mods(scanners.at("sdk_modifier"), "$.scanners.sdk_modifier");
    const std::array<ScannerId, kScannerCount> ids = {
        ScannerId::DataClassifier, ScannerId::IacStatic, ScannerId::CnappRuntime};
    for (std::size_t j = 0; j < kScannerCount; ++j) {
      const std::string key = scanner_key(j);
      c.scanners[j].id = ids[j];
      c.scanners[j].weight = number(weights.at(key), "$.scanners.weights." + key);
      c.scanners[j].base =
          per_vector_from_json(base.at(key), "$.scanners.base_matrix." + key);
      c.scanners[j].sdk_modifier =
          sdk_map_from_json(mods.at(key), "$.scanners.sdk_modifier." + key);
    }
    weights.finish();
    base.finish();
    mods.finish();
    scanners.finish();
  }

  {
    Section attribution(root.at("attribution"), "$.attribution");
    c.attribution.candidates =
        integer(attribution.at("candidates"), "$.attribution.candidates");
    c.attribution.gamma = number(attribution.at("gamma"), "$.attribution.gamma");
    c.attribution.rho = number(attribution.at("rho"), "$.attribution.rho");
    c.attribution.decoy_low =
        number(attribution.at("decoy_low"), "$.attribution.decoy_low");
    c.attribution.decoy_high =
        number(attribution.at("decoy_high"), "$.attribution.decoy_high");
    c.attribution.ctd_probe_gap_h =
        number(attribution.at("ctd_probe_gap_h"), "$.attribution.ctd_probe_gap_h");
    c.attribution.ctd_max_callbacks = integer(
        attribution.at("ctd_max_callbacks"), "$.attribution.ctd_max_callbacks");
    attribution.finish();
  }

  {
    Section sim(root.at("simulation"), "$.simulation");
    c.simulation.window_h = number(sim.at("window_h"), "$.simulation.window_h");
    Section engagement(sim.at("engagement"), "$.simulation.engagement");
    c.simulation.engagement_min = integer(engagement.at("min"), "$...min");
    c.simulation.engagement_extra_trials =
        integer(engagement.at("extra_trials"), "$...extra_trials");
    c.simulation.engagement_extra_p = number(engagement.at("extra_p"), "$...extra_p");
    engagement.finish();
    Section churn(sim.at("churn"), "$.simulation.churn");
    c.simulation.churn_restart_factor =
        number(churn.at("restart_factor"), "$...restart_factor");
    c.simulation.churn_scale_factor =
        number(churn.at("scale_factor"), "$...scale_factor");
    churn.finish();
    Section telemetry(sim.at("telemetry"), "$.simulation.telemetry");
    for (VectorClass v : kAllVectors) {
      const std::string key(to_string(v));
      c.simulation.telemetry[index_of(v)] = telemetry_from_json(
          telemetry.at(key), "$.simulation.telemetry." + key);
    }
    telemetry.finish();
    c.simulation.telemetry_overrides.clear();
    const json& overrides = sim.at("telemetry_overrides");
    if (!overrides.is_object()) {
      throw ConfigError("$.simulation.telemetry_overrides: expected an object");
    }
    for (const auto& [key, value] : overrides.items()) {
      const auto slash = key.find('/');
      if (slash == std::string::npos) {
        throw ConfigError("telemetry override key must be 'vector/provider': " + key);
      }
      vector_from_string(key.substr(0, slash));
      provider_from_string(key.substr(slash + 1));
      c.simulation.telemetry_overrides[key] = telemetry_from_json(
          value, "$.simulation.telemetry_overrides." + key);
    }
    c.simulation.cloud_exit_p =
        per_vector_from_json(sim.at("cloud_exit_p"), "$.simulation.cloud_exit_p");
    Section bonus(sim.at("level_action_bonus_p"), "$.simulation.level_action_bonus_p");
    c.simulation.level_action_bonus_p[0] = number(bonus.at("naive"), "$...naive");
    c.simulation.level_action_bonus_p[1] = number(bonus.at("advanced"), "$...advanced");
    c.simulation.level_action_bonus_p[2] = number(bonus.at("apt"), "$...apt");
    bonus.finish();
    sim.finish();
  }

  {
    Section experiment(root.at("experiment"), "$.experiment");
    c.experiment.master_seed = static_cast<std::uint64_t>(
        integer(experiment.at("master_seed"), "$.experiment.master_seed"));
    c.experiment.replicas = integer(experiment.at("replicas"), "$.experiment.replicas");
    c.experiment.horizon_h = number(experiment.at("horizon_h"), "$.experiment.horizon_h");
    c.experiment.decay_timepoints.clear();
    for (const auto& item : experiment.at("decay_timepoints")) {
      c.experiment.decay_timepoints.push_back(
          number(item, "$.experiment.decay_timepoints[]"));
    }
    c.experiment.threshold = number(experiment.at("threshold"), "$.experiment.threshold");
    c.experiment.context = text(experiment.at("context"), "$.experiment.context");
    c.experiment.kappa = number(experiment.at("iam_churn_attenuation"),
                                "$.experiment.iam_churn_attenuation");
    Section priors(experiment.at("decay_priors"), "$.experiment.decay_priors");
    for (VectorClass v : kAllVectors) {
      const std::string key(to_string(v));
      c.experiment.decay_priors[index_of(v)] =
          decay_prior_from_json(priors.at(key), "$.experiment.decay_priors." + key);
    }
    priors.finish();
    experiment.finish();
  }

  {
    Section contexts(root.at("contexts"), "$.contexts");
    c.contexts.clear();
    for (const auto& [label, value] : contexts.raw().items()) {
      c.contexts[label] = context_from_json(value, label, "$.contexts." + label);
    }
  }

  {
    Section taxonomy(root.at("taxonomy"), "$.taxonomy");
    Section radar(taxonomy.at("radar"), "$.taxonomy.radar");
    for (VectorClass v : kAllVectors) {
      const std::string key(to_string(v));
      Section axes(radar.at(key), "$.taxonomy.radar." + key);
      PropertyProfile& p = c.properties[index_of(v)];
      p = property_profile(v);  // model constants stay fixed
      p.stealth = number(axes.at("stealth"), "$...stealth");
      p.multi_cloud_support =
          number(axes.at("multi_cloud_support"), "$...multi_cloud_support");
      p.ttd_efficiency = number(axes.at("ttd_efficiency"), "$...ttd_efficiency");
      for (double axis : {p.stealth, p.multi_cloud_support, p.ttd_efficiency}) {
        if (!(axis >= 0.0 && axis <= 1.0)) {
          throw ConfigError("$.taxonomy.radar." + key + ": axes must lie in [0, 1]");
        }
      }
      axes.finish();
    }
    radar.finish();
    taxonomy.finish();
  }

  // Provenance written by the calibration pipeline is informational.
  if (root.has("provenance") && !root.raw()["provenance"].is_object()) {
    throw ConfigError("$.provenance: expected an object");
  }

  root.finish();

  c.simulation.delta = c.delta;
  c.attribution.threshold = c.experiment.threshold;
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

void save_config(const Config& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << config_to_json_text(config);
}

std::string config_digest(const Config& config) {
  return digest_hex(config_to_json_text(config));
}

}  // namespace cloudburst
