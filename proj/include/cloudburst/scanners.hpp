#ifndef CLOUDBURST_SCANNERS_HPP
#define CLOUDBURST_SCANNERS_HPP

#include <array>
#include <vector>

#include "cloudburst/adversary.hpp"
#include "cloudburst/types.hpp"

namespace cloudburst {

/// The three modelled scanner families.
enum class ScannerId {
  DataClassifier,  // S1: managed sensitive-data classification
  IacStatic,       // S2: infrastructure-as-code static analysis
  CnappRuntime,    // S3: runtime CNAPP anomaly detection
};

inline constexpr std::size_t kScannerCount = 3;

/**
 * Behavioural scanner model: a per-vector base detection probability plus
 * an additive shift keyed on the attacker's tooling. Scanners are
 * probabilities per callback, not rule engines.
 */
struct ScannerModel {
  ScannerId id{};
  double weight = 0.0;  // lambda_j
  std::array<double, kVectorCount> base{};
  std::array<double, kSdkCount> sdk_modifier{};
};

/// Default committed models: weights (0.40, 0.30, 0.30) with a base matrix
/// calibrated so weighted per-vector detection reproduces the target
/// resistance profile.
std::array<ScannerModel, kScannerCount> default_scanners();

struct DetectionOutcome {
  std::array<double, kScannerCount> per_scanner{};
  double combined = 0.0;
  double resistance = 0.0;
  /// Sampled boolean for campaign-level flagging; derived deterministically
  /// from the event identity so scan() itself stays a pure function.
  bool flagged = false;
};

/// Weighted-probability scan of one callback. Throws ConfigError when the
/// scanner weights do not sum to 1.
DetectionOutcome scan(const CallbackEvent& event,
                      const std::array<ScannerModel, kScannerCount>& models);

/// How the per-vector detection mass splits across the three scanners.
/// Shares sum to 1 per vector; entries follow the qualitative ordering
/// (IaC static heaviest for Terraform/K8s, runtime CNAPP heaviest for
/// Serverless/Container, the data classifier for credential-shaped
/// artifacts, everything light for IAM canaries).
std::array<std::array<double, kScannerCount>, kVectorCount>
default_detection_shares();

/**
 * Solves the base matrix from per-vector detection-resistance targets:
 * weight_j * base[j][v] = share[v][j] * (1 - dr_target[v]), so each
 * weighted row sum equals the target detection mass exactly.
 * Throws CalibrationError when a target forces a probability outside [0,1].
 */
std::array<std::array<double, kVectorCount>, kScannerCount>
calibrate_base_matrix(
    const std::array<double, kVectorCount>& dr_targets,
    const std::array<double, kScannerCount>& weights,
    const std::array<std::array<double, kScannerCount>, kVectorCount>& shares);

}  // namespace cloudburst

#endif  // CLOUDBURST_SCANNERS_HPP
