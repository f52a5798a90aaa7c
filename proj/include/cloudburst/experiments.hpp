#ifndef CLOUDBURST_EXPERIMENTS_HPP
#define CLOUDBURST_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cloudburst/config.hpp"
#include "cloudburst/stats.hpp"

namespace cloudburst {

struct Aggregate {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
};

Aggregate aggregate_of(const std::vector<double>& values);

/// One (vector, attacker) cell of the grid study.
struct GridCell {
  VectorClass vector{};
  AttackerLevel level{};
  std::size_t n_callbacks = 0;
  Aggregate cas;
  Aggregate dr;
  Aggregate ctd;            // over traces that reached the threshold
  double ctd_median = 0.0;
  std::size_t ctd_not_reached = 0;
  Aggregate posterior;      // final true-actor posterior per trace
  bool insufficient = false;  // fewer than 3 callbacks: excluded from tests
};

struct VectorRow {
  VectorClass vector{};
  std::size_t n_callbacks = 0;
  double cas_mean = 0.0;
  double cas_sd = 0.0;
  double dr_mean = 0.0;
  double dr_sd = 0.0;
  double ctd_mean = 0.0;
  double ctd_median = 0.0;
  double posterior_mean = 0.0;
  double inherent_ephemeral_risk = 0.0;
  // Reporting-only deployment axes from the config's radar table.
  double stealth = 0.0;
  double multi_cloud_support = 0.0;
  double ttd_efficiency = 0.0;
};

struct GridReport {
  std::uint64_t master_seed = 0;
  std::string config_digest;
  int replicas = 0;
  std::vector<GridCell> cells;       // 18 in vector-major order
  std::vector<VectorRow> per_vector; // 6
  double overall_cas = 0.0;
  double overall_dr = 0.0;
  std::size_t campaign_callbacks = 0;  // master campaign (replica 0) size
  // Attacker-level effect tests, computed on the master campaign:
  // per-callback CAS, per-trace final posterior, per-trace CTD.
  stats::TestResult anova_cas;
  stats::TestResult anova_posterior;
  stats::TestResult anova_ctd;
};

struct DecayRow {
  VectorClass vector{};
  double t = 0.0;
  std::size_t n = 0;
  double cas_mean = 0.0;
  double cas_sd = 0.0;
  double ep_mean = 0.0;
};

struct DecayReport {
  std::uint64_t master_seed = 0;
  std::string config_digest;
  int replicas = 0;
  std::vector<DecayRow> rows;  // vector-major, timepoints ascending
  /// Welch contrast between the first and last timepoint, per vector.
  std::vector<stats::TestResult> contrasts;
  std::array<double, kVectorCount> cas_first{};
  std::array<double, kVectorCount> cas_last{};
};

struct ProviderCell {
  VectorClass vector{};
  CloudProvider provider{};
  std::size_t n_callbacks = 0;
  double cas_mean = 0.0;
  double cas_sd = 0.0;
};

struct ProviderReport {
  std::uint64_t master_seed = 0;
  std::string config_digest;
  int replicas = 0;
  std::vector<ProviderCell> cells;  // 21
  std::vector<stats::GroupSummary> provider_distributions;  // per provider
  /// Kruskal-Wallis across provider columns over per-cell mean CAS.
  stats::TestResult kruskal;
};

struct ScatterPoint {
  std::string beacon_id;
  VectorClass vector{};
  CloudProvider provider{};
  AttackerLevel level{};
  int replica = 0;
  std::size_t n_callbacks = 0;
  double mean_cas = 0.0;
  double final_posterior = 0.0;
};

struct ScatterReport {
  std::uint64_t master_seed = 0;
  std::string config_digest;
  int replicas = 0;
  std::vector<ScatterPoint> points;
  double pearson_r = 0.0;
  std::size_t ideal_zone_count = 0;  // CAS >= 0.70 and posterior >= 0.85
  double max_posterior = 0.0;
};

enum class Tier { DeployUniversally = 1, DeployWithCachingAwareness = 2,
                  DeployWithRuntimeMonitoring = 3 };

/**
 * Deployment tiers from the grid trade-off: tier 1 is the top two vectors
 * by (CAS rank, then DR rank) among those with inherent ephemeral risk
 * <= 0.10; tier 3 is every vector with inherent risk >= 0.50; tier 2 the
 * remainder. Ties break by class declaration order.
 * Throws std::invalid_argument when the report is missing vector rows.
 */
std::map<VectorClass, Tier> recommend_tiers(const GridReport& report);

GridReport run_grid(const Config& config, int jobs = 1);
DecayReport run_decay(const Config& config, int jobs = 1);
ProviderReport run_provider_analysis(const Config& config, int jobs = 1);
ScatterReport run_scatter_study(const Config& config, int jobs = 1);

/// Runs `count` tasks on `jobs` workers; results land in slot order, so
/// scheduling never influences output.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& task);

}  // namespace cloudburst

#endif  // CLOUDBURST_EXPERIMENTS_HPP
