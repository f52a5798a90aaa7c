#include "cloudburst/scanners.hpp"

#include <algorithm>
#include <cmath>

#include "cloudburst/digest.hpp"
#include "cloudburst/rng.hpp"

namespace cloudburst {

namespace {

// Detection-resistance targets for the committed default matrix.
constexpr std::array<double, kVectorCount> kDrTargets = {
    0.890,  // s3_presigned_url
    0.736,  // container_image
    0.873,  // iam_canary_role
    0.768,  // terraform_module
    0.741,  // k8s_secret
    0.611,  // serverless_trigger
};

constexpr std::array<double, kScannerCount> kDefaultWeights = {0.40, 0.30, 0.30};

}  // namespace

std::array<std::array<double, kScannerCount>, kVectorCount>
default_detection_shares() {
  return {{
      /* S3PresignedUrl   */ {0.55, 0.10, 0.35},
      /* ContainerImage   */ {0.30, 0.15, 0.55},
      /* IamCanaryRole    */ {0.40, 0.25, 0.35},
      /* TerraformModule  */ {0.25, 0.55, 0.20},
      /* K8sSecret        */ {0.30, 0.50, 0.20},
      /* ServerlessTrigger*/ {0.25, 0.15, 0.60},
  }};
}

std::array<std::array<double, kVectorCount>, kScannerCount>
calibrate_base_matrix(
    const std::array<double, kVectorCount>& dr_targets,
    const std::array<double, kScannerCount>& weights,
    const std::array<std::array<double, kScannerCount>, kVectorCount>& shares) {
  std::array<std::array<double, kVectorCount>, kScannerCount> base{};
  for (std::size_t v = 0; v < kVectorCount; ++v) {
    if (!(dr_targets[v] >= 0.0 && dr_targets[v] <= 1.0)) {
      throw CalibrationError("detection-resistance target outside [0, 1]");
    }
    const double mass = 1.0 - dr_targets[v];
    for (std::size_t j = 0; j < kScannerCount; ++j) {
      if (weights[j] <= 0.0) {
        throw CalibrationError("scanner weight must be positive");
      }
      const double p = shares[v][j] * mass / weights[j];
      if (p < 0.0 || p > 1.0) {
        throw CalibrationError(
            "infeasible detection target for vector " +
            std::string(to_string(kAllVectors[v])));
      }
      base[j][v] = p;
    }
  }
  return base;
}

std::array<ScannerModel, kScannerCount> default_scanners() {
  const auto base =
      calibrate_base_matrix(kDrTargets, kDefaultWeights, default_detection_shares());
  std::array<ScannerModel, kScannerCount> models{};
  models[0].id = ScannerId::DataClassifier;
  models[1].id = ScannerId::IacStatic;
  models[2].id = ScannerId::CnappRuntime;
  for (std::size_t j = 0; j < kScannerCount; ++j) {
    models[j].weight = kDefaultWeights[j];
    models[j].base = base[j];
    models[j].sdk_modifier = {0.0, 0.0, 0.0};
  }
  // Runtime anomaly detection reacts to tooling: curl-style access is
  // noisier than a native SDK that blends with legitimate traffic.
  models[2].sdk_modifier = {0.05, 0.0, -0.05};
  return models;
}

DetectionOutcome scan(const CallbackEvent& event,
                      const std::array<ScannerModel, kScannerCount>& models) {
  double weight_sum = 0.0;
  for (const auto& m : models) weight_sum += m.weight;
  if (std::fabs(weight_sum - 1.0) > 1e-9) {
    throw ConfigError("scanner weights must sum to 1");
  }

  DetectionOutcome out;
  double combined = 0.0;
  for (std::size_t j = 0; j < kScannerCount; ++j) {
    const double p = std::clamp(
        models[j].base[index_of(event.vector)] +
            models[j].sdk_modifier[index_of(event.sdk)],
        0.0, 1.0);
    out.per_scanner[j] = p;
    combined += models[j].weight * p;
  }
  out.combined = combined;
  out.resistance = 1.0 - combined;

  Rng rng(derive_seed(fnv1a64(event.beacon_id),
                      {static_cast<std::uint64_t>(event.index_in_trace),
                       static_cast<std::uint64_t>(index_of(event.level))}));
  out.flagged = rng.bernoulli(combined);
  return out;
}

}  // namespace cloudburst
