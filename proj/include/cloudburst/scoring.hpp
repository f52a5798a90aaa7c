#ifndef CLOUDBURST_SCORING_HPP
#define CLOUDBURST_SCORING_HPP

#include <array>
#include <optional>

#include "cloudburst/types.hpp"

namespace cloudburst {

/// Composite score weights. Must sum to 1 within 1e-9.
struct CasWeights {
  double fidelity = 0.35;       // w1
  double iam = 0.25;            // w2
  double iam_survival = 0.25;   // w3, the (1 - E_p) * I_c interaction
  double multi_cloud = 0.15;    // w4

  void validate() const;
};

struct CasBreakdown {
  double c_f = 0.0;  // callback fidelity
  double e_p = 0.0;  // ephemeral penalty
  double i_c = 0.0;  // IAM coverage
  double m_b = 0.0;  // multi-cloud bonus
  double cas = 0.0;
};

/// Infrastructure churn observed at callback time. `t` is the elapsed
/// hours on the churn clock, `restarts`/`scale_events` the cumulative pod
/// restart and autoscaling counts up to that instant.
struct ChurnState {
  double t = 0.0;
  int restarts = 0;
  int scale_events = 0;
  double delta = 0.05;  // base decay rate per hour
};

struct IamTelemetry {
  int actions = 0;          // logged API actions
  int principals = 1;       // distinct IAM principals observed
  bool cross_account = false;
};

struct RoutingEvidence {
  bool tor = false;
  bool vpn = false;
  bool residential = false;
  bool rotated = false;
  /// Provider hosting the exit IP, when the exit sits in a known cloud
  /// range; empty for residential/ISP exits.
  std::optional<CloudProvider> exit_provider;
};

struct CrossProviderEvidence {
  int distinct_providers = 1;
  bool cloud_exit = false;
};

/// Fidelity model: per-vector base quality, additive SDK shift, and
/// subtractive routing penalties, clamped to [floor, 1].
struct FidelityParams {
  std::array<double, kVectorCount> base = {0.92, 0.80, 0.97,
                                           0.82, 0.86, 0.90};
  std::array<double, kSdkCount> sdk_shift = {0.0, 0.05, 0.12};
  double tor_penalty = 0.21;
  double vpn_penalty = 0.15;
  double residential_penalty = 0.28;
  double rotation_penalty = 0.03;
  double floor = 0.05;
};

struct MultiCloudParams {
  double per_provider = 0.20;  // b_p
  double cloud_exit = 0.20;    // b_x
};

/// The composite score:
///   w1 * C_f * (1 - E_p) + w2 * I_c + w3 * (1 - E_p) * I_c + w4 * M_b.
/// Throws std::domain_error when a component lies outside [0, 1].
double cas(double c_f, double e_p, double i_c, double m_b,
           const CasWeights& weights = {});

/// 1 - exp(-delta * (t + 2r + 3s)). Throws std::domain_error on negative
/// inputs or non-positive delta.
double ephemeral_penalty(const ChurnState& churn);

/// min(n_a / 10, 0.80) + 0.10 * [k > 1] + 0.10 * [cross-account].
/// The divisor and caps are fixed constants of the model, not config.
double iam_coverage(const IamTelemetry& telemetry);

double callback_fidelity(const RoutingEvidence& routing, SdkClass sdk,
                         VectorClass vector, const FidelityParams& params = {});

/// clamp(b_p * (distinct - 1) + b_x * [cloud exit], 0, 1). Throws
/// std::domain_error when distinct_providers < 1.
double multi_cloud_bonus(const CrossProviderEvidence& evidence,
                         const MultiCloudParams& params = {});

/// Convenience: assemble a breakdown from already-sampled components,
/// clamping each into [0, 1] first. Simulation paths use this; direct API
/// calls go through cas(), which rejects out-of-range values instead.
CasBreakdown make_breakdown(double c_f, double e_p, double i_c, double m_b,
                            const CasWeights& weights = {});

}  // namespace cloudburst

#endif  // CLOUDBURST_SCORING_HPP
