#include "cloudburst/attribution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cloudburst/digest.hpp"
#include "cloudburst/rng.hpp"
#include "cloudburst/stats.hpp"

namespace cloudburst {

namespace {

/// Stable hash of the evidence a callback carries; seeds the decoy draws.
std::uint64_t evidence_hash(const CallbackEvent& ev) {
  std::ostringstream key;
  key << ev.beacon_id << '|' << ev.index_in_trace << '|'
      << int(ev.routing.tor) << int(ev.routing.vpn)
      << int(ev.routing.residential) << int(ev.routing.rotated) << '|'
      << ev.iam.actions << '|' << ev.iam.principals << '|'
      << int(ev.iam.cross_account) << '|' << ev.churn.restarts << '|'
      << ev.churn.scale_events << '|' << ev.evidence.distinct_providers;
  return fnv1a64(key.str());
}

}  // namespace

std::size_t PosteriorState::leading_candidate() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probabilities.size(); ++i) {
    if (probabilities[i] > probabilities[best]) best = i;
  }
  return best;
}

PosteriorState make_uniform_posterior(const AttributionParams& params) {
  if (params.candidates < 2) {
    throw std::invalid_argument("need >= 2 candidate actors");
  }
  PosteriorState s;
  const std::size_t n = static_cast<std::size_t>(params.candidates);
  s.candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "actor-%02u", static_cast<unsigned>(i));
    s.candidates.emplace_back(buf);
  }
  s.probabilities.assign(n, 1.0 / static_cast<double>(n));
  s.true_actor = 0;
  s.callbacks_consumed = 0;
  return s;
}

PosteriorState update_posterior(const PosteriorState& state,
                                const CallbackEvent& callback,
                                const CasBreakdown& cas,
                                const AttributionParams& params) {
  PosteriorState next = state;
  const std::uint64_t h = evidence_hash(callback);
  Rng decoys(h);
  double total = 0.0;
  for (std::size_t i = 0; i < next.probabilities.size(); ++i) {
    double ratio;
    if (i == next.true_actor) {
      ratio = 1.0 + params.gamma * cas.cas;
    } else {
      ratio = decoys.uniform(params.decoy_low, params.decoy_high);
    }
    next.probabilities[i] *= ratio;
    total += next.probabilities[i];
  }
  for (double& p : next.probabilities) p /= total;
  next.callbacks_consumed = state.callbacks_consumed + 1;
  return next;
}

double confidence_after(const std::vector<double>& cas_values, double rho) {
  double miss = 1.0;
  for (double c : cas_values) miss *= (1.0 - rho * c);
  return 1.0 - miss;
}

AttributionTrace run_trace(const std::vector<CallbackEvent>& events,
                           const std::vector<CasBreakdown>& scores,
                           const AttributionParams& params) {
  if (events.size() != scores.size()) {
    throw std::invalid_argument("run_trace: events/scores length mismatch");
  }
  AttributionTrace trace;
  trace.cas_series = scores;
  PosteriorState posterior = make_uniform_posterior(params);
  double miss = 1.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    posterior = update_posterior(posterior, events[i], scores[i], params);
    trace.posterior_series.push_back(posterior.true_actor_probability());
    miss *= (1.0 - params.rho * scores[i].cas);
    const double confidence = 1.0 - miss;
    trace.confidence_series.push_back(confidence);
    if (!trace.ctd && confidence >= params.threshold) {
      trace.ctd = static_cast<int>(i) + 1;
    }
  }
  return trace;
}

std::optional<int> measure_ctd(const BeaconInstance& beacon,
                               const AttackerProfile& profile,
                               std::uint64_t seed, double threshold,
                               const AttributionParams& params,
                               const SimulationParams& sim,
                               const CasWeights& weights,
                               const FidelityParams& fidelity,
                               const MultiCloudParams& multicloud) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  const auto events = simulate_probe_trace(
      beacon, profile, params.ctd_probe_gap_h, params.ctd_max_callbacks,
      seed, sim);
  double miss = 1.0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const CasBreakdown b = score_callback(events[i], weights, fidelity, multicloud);
    miss *= (1.0 - params.rho * b.cas);
    if (1.0 - miss >= threshold) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

double cas_posterior_correlation(const std::vector<double>& mean_cas,
                                 const std::vector<double>& final_posterior) {
  return stats::pearson(mean_cas, final_posterior);
}

std::string trace_to_csv(const AttributionTrace& trace) {
  std::ostringstream out;
  out << "index,cas,posterior,confidence\n";
  char buf[128];
  for (std::size_t i = 0; i < trace.cas_series.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f\n", i + 1,
                  trace.cas_series[i].cas, trace.posterior_series[i],
                  trace.confidence_series[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace cloudburst
