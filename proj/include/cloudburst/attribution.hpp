#ifndef CLOUDBURST_ATTRIBUTION_HPP
#define CLOUDBURST_ATTRIBUTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cloudburst/adversary.hpp"
#include "cloudburst/scoring.hpp"

namespace cloudburst {

/// Posterior over candidate actors. Probabilities stay on the simplex.
struct PosteriorState {
  std::vector<std::string> candidates;
  std::vector<double> probabilities;
  std::size_t true_actor = 0;
  std::size_t callbacks_consumed = 0;

  double true_actor_probability() const { return probabilities[true_actor]; }
  /// Argmax candidate; ties break toward the lowest identifier.
  std::size_t leading_candidate() const;
};

struct AttributionParams {
  int candidates = 10;
  double gamma = 0.9;   // likelihood-ratio slope on the true actor
  double rho = 0.55;    // confidence accumulator rate
  double decoy_low = 0.9;
  double decoy_high = 1.1;
  double threshold = 0.85;
  double ctd_probe_gap_h = 4.0;  // spacing of the dedicated CTD probe trace
  int ctd_max_callbacks = 30;
};

PosteriorState make_uniform_posterior(const AttributionParams& params = {});

/**
 * One Bayesian step: the true actor's odds multiply by 1 + gamma * cas,
 * each decoy's odds by a factor drawn deterministically from the callback's
 * evidence hash in [decoy_low, decoy_high]; then renormalise.
 */
PosteriorState update_posterior(const PosteriorState& state,
                                const CallbackEvent& callback,
                                const CasBreakdown& cas,
                                const AttributionParams& params = {});

/// Operational confidence after the scores seen so far:
/// conf_n = 1 - prod_i (1 - rho * cas_i). Non-decreasing in n.
double confidence_after(const std::vector<double>& cas_values, double rho);

/// Full per-callback series for one trace, in event order.
struct AttributionTrace {
  std::vector<CasBreakdown> cas_series;
  std::vector<double> posterior_series;   // true-actor posterior
  std::vector<double> confidence_series;  // operational confidence
  std::optional<int> ctd;  // 1-based first index reaching the threshold
};

/// Runs posterior updates and the confidence accumulator over pre-scored
/// callbacks. CTD is defined on the operational confidence, not the
/// cross-actor posterior; both series are reported.
AttributionTrace run_trace(const std::vector<CallbackEvent>& events,
                           const std::vector<CasBreakdown>& scores,
                           const AttributionParams& params = {});

/**
 * Callbacks-to-detect for one (beacon, profile) pair: simulates a dedicated
 * probe trace (callbacks at a fixed cadence so the engagement cannot end
 * before the threshold question is answered) and returns the first
 * callback count at which the operational confidence reaches `threshold`,
 * or nullopt when the probe cap is exhausted first.
 */
std::optional<int> measure_ctd(
    const BeaconInstance& beacon, const AttackerProfile& profile,
    std::uint64_t seed, double threshold,
    const AttributionParams& params = {},
    const SimulationParams& sim = default_simulation_params(),
    const CasWeights& weights = {}, const FidelityParams& fidelity = {},
    const MultiCloudParams& multicloud = {});

/// Pearson correlation between per-pair mean CAS and final posterior.
/// Throws std::invalid_argument for < 3 pairs, std::domain_error when a
/// series is constant.
double cas_posterior_correlation(const std::vector<double>& mean_cas,
                                 const std::vector<double>& final_posterior);

std::string trace_to_csv(const AttributionTrace& trace);

}  // namespace cloudburst

#endif  // CLOUDBURST_ATTRIBUTION_HPP
