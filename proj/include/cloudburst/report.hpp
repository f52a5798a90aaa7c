#ifndef CLOUDBURST_REPORT_HPP
#define CLOUDBURST_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "cloudburst/experiments.hpp"

namespace cloudburst {

/**
 * File emission for the four studies. Each writer produces
 * `<study>.csv`, `<study>_tests.json` and `<study>.svg` inside `out_dir`
 * and returns the file names it wrote. The run manifest is written last,
 * by write_manifest, so partially written runs are detectable by its
 * absence.
 */
std::vector<std::string> write_grid_report(
    const GridReport& report, const std::map<VectorClass, Tier>& tiers,
    const std::string& out_dir);
std::vector<std::string> write_decay_report(const DecayReport& report,
                                            const std::string& out_dir);
std::vector<std::string> write_provider_report(const ProviderReport& report,
                                               const std::string& out_dir);
std::vector<std::string> write_scatter_report(const ScatterReport& report,
                                              const std::string& out_dir);

struct ManifestInfo {
  std::string study;
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::string started_utc;
  std::string finished_utc;
};

/// Records the output inventory with per-file content digests.
void write_manifest(const ManifestInfo& info, const std::string& out_dir,
                    const std::vector<std::string>& files);

std::string utc_timestamp();

/// Short console summaries, one table per study.
std::string grid_summary_table(const GridReport& report,
                               const std::map<VectorClass, Tier>& tiers);
std::string decay_summary_table(const DecayReport& report);
std::string provider_summary_table(const ProviderReport& report);
std::string scatter_summary_table(const ScatterReport& report);

}  // namespace cloudburst

#endif  // CLOUDBURST_REPORT_HPP
