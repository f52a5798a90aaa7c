#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "cloudburst/digest.hpp"
#include "cloudburst/experiments.hpp"
#include <nlohmann/json.hpp>

#include "cloudburst/report.hpp"

using namespace cloudburst;
namespace fs = std::filesystem;

namespace {

Config small_config() {
  Config config = default_config();
  config.experiment.replicas = 8;
  return config;
}

}  // namespace

TEST_CASE("grid study bookkeeping and determinism") {
  const Config config = small_config();
  const GridReport a = run_grid(config, 1);
  const GridReport b = run_grid(config, 1);

  CHECK(a.cells.size() == kVectorCount * kLevelCount);
  CHECK(a.per_vector.size() == kVectorCount);

  // Cell callback counts add up to the vector rows and the overall count.
  std::size_t total = 0;
  for (const auto& vec : a.per_vector) {
    std::size_t from_cells = 0;
    for (const auto& cell : a.cells) {
      if (cell.vector == vec.vector) from_cells += cell.n_callbacks;
    }
    CHECK(from_cells == vec.n_callbacks);
    total += vec.n_callbacks;
  }
  CHECK(total > 0);

  // Byte-identical reports under repetition.
  CHECK(a.overall_cas == b.overall_cas);
  CHECK(a.anova_cas.p_value == b.anova_cas.p_value);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].cas.mean == b.cells[i].cas.mean);
    CHECK(a.cells[i].ctd.mean == b.cells[i].ctd.mean);
  }
}

TEST_CASE("parallel execution reproduces the serial report exactly") {
  const Config config = small_config();
  const GridReport serial = run_grid(config, 1);
  const GridReport parallel = run_grid(config, 4);
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].cas.mean == parallel.cells[i].cas.mean);
    CHECK(serial.cells[i].dr.mean == parallel.cells[i].dr.mean);
    CHECK(serial.cells[i].posterior.mean == parallel.cells[i].posterior.mean);
  }
  const DecayReport decay_serial = run_decay(config, 1);
  const DecayReport decay_parallel = run_decay(config, 3);
  for (std::size_t i = 0; i < decay_serial.rows.size(); ++i) {
    CHECK(decay_serial.rows[i].cas_mean == decay_parallel.rows[i].cas_mean);
  }
}

TEST_CASE("decay study is monotone non-increasing per vector") {
  Config config = default_config();
  config.experiment.replicas = 50;
  const DecayReport report = run_decay(config, 1);
  CHECK(report.rows.size() ==
        kVectorCount * config.experiment.decay_timepoints.size());
  for (VectorClass v : kAllVectors) {
    double prev = 2.0;
    for (const auto& row : report.rows) {
      if (row.vector != v) continue;
      CHECK(row.cas_mean <= prev + 0.02);  // one-sided noise tolerance
      prev = row.cas_mean;
      CHECK(row.n == 50);
    }
  }
  // The first-vs-last contrast is decisive for every vector.
  for (const auto& contrast : report.contrasts) {
    CHECK(contrast.p_value < 0.001);
  }
}

TEST_CASE("provider analysis covers the matrix and tests the provider effect") {
  const Config config = small_config();
  const ProviderReport report = run_provider_analysis(config, 1);
  CHECK(report.cells.size() == 21);
  CHECK(report.provider_distributions.size() == kProviderCount);
  CHECK(report.kruskal.p_value >= 0.0);
  CHECK(report.kruskal.p_value <= 1.0);
  // Groups follow provider applicability: 6 vectors on aws/gcp/azure, 3 on oci.
  CHECK(report.kruskal.groups[index_of(CloudProvider::Aws)].n == 6);
  CHECK(report.kruskal.groups[index_of(CloudProvider::Oci)].n == 3);
}

TEST_CASE("scatter study emits per-engagement points with summary stats") {
  const Config config = small_config();
  const ScatterReport report = run_scatter_study(config, 1);
  CHECK(report.points.size() > 100);
  for (const auto& p : report.points) {
    CHECK(p.mean_cas >= 0.0);
    CHECK(p.mean_cas <= 1.0);
    CHECK(p.final_posterior >= 0.0);
    CHECK(p.final_posterior <= 1.0);
  }
  CHECK(report.max_posterior <= 1.0);
  CHECK(report.pearson_r >= -1.0);
  CHECK(report.pearson_r <= 1.0);
}

TEST_CASE("tier recommendation follows the lexicographic rule") {
  GridReport report;
  const double cas_values[] = {0.383, 0.325, 0.450, 0.398, 0.328, 0.318};
  const double dr_values[] = {0.890, 0.736, 0.873, 0.768, 0.741, 0.611};
  for (VectorClass v : kAllVectors) {
    VectorRow row;
    row.vector = v;
    row.cas_mean = cas_values[index_of(v)];
    row.dr_mean = dr_values[index_of(v)];
    row.inherent_ephemeral_risk = property_profile(v).inherent_ephemeral_risk;
    report.per_vector.push_back(row);
  }
  const auto tiers = recommend_tiers(report);
  CHECK(tiers.at(VectorClass::IamCanaryRole) == Tier::DeployUniversally);
  CHECK(tiers.at(VectorClass::S3PresignedUrl) == Tier::DeployUniversally);
  CHECK(tiers.at(VectorClass::TerraformModule) == Tier::DeployWithCachingAwareness);
  CHECK(tiers.at(VectorClass::ContainerImage) == Tier::DeployWithCachingAwareness);
  CHECK(tiers.at(VectorClass::K8sSecret) == Tier::DeployWithRuntimeMonitoring);
  CHECK(tiers.at(VectorClass::ServerlessTrigger) == Tier::DeployWithRuntimeMonitoring);

  // All-equal scores with zero risk: the first two classes by declaration
  // order take tier 1, nothing qualifies for tier 3.
  GridReport flat_report;
  for (VectorClass v : kAllVectors) {
    VectorRow row;
    row.vector = v;
    row.cas_mean = 0.5;
    row.dr_mean = 0.5;
    row.inherent_ephemeral_risk = 0.0;
    flat_report.per_vector.push_back(row);
  }
  const auto tie_tiers = recommend_tiers(flat_report);
  CHECK(tie_tiers.at(VectorClass::S3PresignedUrl) == Tier::DeployUniversally);
  CHECK(tie_tiers.at(VectorClass::ContainerImage) == Tier::DeployUniversally);
  CHECK(tie_tiers.at(VectorClass::IamCanaryRole) == Tier::DeployWithCachingAwareness);

  GridReport incomplete;
  CHECK_THROWS_AS(recommend_tiers(incomplete), std::invalid_argument);
}

TEST_CASE("report writers emit the documented files with digests") {
  const Config config = small_config();
  const std::string dir = "test_report_out";
  fs::remove_all(dir);

  const GridReport grid = run_grid(config, 1);
  const auto tiers = recommend_tiers(grid);
  auto files = write_grid_report(grid, tiers, dir);
  ManifestInfo info;
  info.study = "grid";
  info.config_digest = config_digest(config);
  info.master_seed = config.experiment.master_seed;
  info.started_utc = utc_timestamp();
  info.finished_utc = utc_timestamp();
  write_manifest(info, dir, files);

  for (const auto& name : {"grid.csv", "grid_tests.json", "grid.svg",
                           "manifest.json"}) {
    CHECK(fs::exists(fs::path(dir) / name));
  }

  // Manifest digests match the files on disk.
  std::ifstream manifest_in(fs::path(dir) / "manifest.json");
  nlohmann::json manifest;
  manifest_in >> manifest;
  for (const auto& entry : manifest.at("files")) {
    const std::string name = entry.at("name").get<std::string>();
    CHECK(entry.at("fnv1a64").get<std::string>() ==
          digest_file((fs::path(dir) / name).string()));
  }
  fs::remove_all(dir);
}
