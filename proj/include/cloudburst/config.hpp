#ifndef CLOUDBURST_CONFIG_HPP
#define CLOUDBURST_CONFIG_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cloudburst/adversary.hpp"
#include "cloudburst/attribution.hpp"
#include "cloudburst/scanners.hpp"
#include "cloudburst/scoring.hpp"
#include "cloudburst/taxonomy.hpp"

namespace cloudburst {

/// Per-vector component priors for the decay study's t = 0 state.
struct DecayPrior {
  double c_f_mean = 0.88;
  double c_f_sd = 0.04;
  double i_c_mean = 0.84;
  double i_c_sd = 0.05;
  double m_b_mean = 0.45;
  double m_b_sd = 0.08;
};

struct ExperimentParams {
  std::uint64_t master_seed = 42;
  int replicas = 50;
  double horizon_h = 168.0;
  std::vector<double> decay_timepoints = {0, 6, 12, 24, 36, 48};
  double threshold = 0.85;
  std::string context = "payflow.io";
  /// IAM-coverage churn attenuation strength: I_c scales by (1 - kappa*E_p)
  /// in the decay study.
  double kappa = 0.3641;
  std::array<DecayPrior, kVectorCount> decay_priors{};

  void validate() const;
};

/**
 * Full calibrated parameter set. The compiled-in defaults equal the
 * committed data/cloudburst.json; `calibrate` regenerates that file from
 * the anchor targets.
 */
struct Config {
  int schema_version = 1;
  CasWeights weights;
  double delta = 0.05;
  FidelityParams fidelity;
  MultiCloudParams multicloud;
  std::array<AttackerProfile, kLevelCount> attackers = {
      default_profile(AttackerLevel::Naive),
      default_profile(AttackerLevel::Advanced),
      default_profile(AttackerLevel::Apt)};
  std::array<ScannerModel, kScannerCount> scanners = default_scanners();
  AttributionParams attribution;
  SimulationParams simulation = default_simulation_params();
  ExperimentParams experiment;
  std::map<std::string, ContextProfile> contexts = {
      {"payflow.io", payflow_context()}};
  /// Per-vector deployment properties. The ephemeral-risk and
  /// IAM-complexity entries are model constants; the reporting axes
  /// (stealth, multi-cloud support, TTD efficiency) accept config
  /// overrides and never feed the score.
  std::array<PropertyProfile, kVectorCount> properties = default_properties();

  static std::array<PropertyProfile, kVectorCount> default_properties();

  const ContextProfile& context_profile(const std::string& label) const;
  void validate() const;
};

Config default_config();

/// Strict parse: unknown keys anywhere in the document are hard errors,
/// reported with their JSON path. Throws ConfigError.
Config load_config(const std::string& path);
Config config_from_json_text(const std::string& text);

void save_config(const Config& config, const std::string& path);
std::string config_to_json_text(const Config& config);

/// Digest of the canonical JSON form; recorded in run manifests.
std::string config_digest(const Config& config);

}  // namespace cloudburst

#endif  // CLOUDBURST_CONFIG_HPP
