#include "cloudburst/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cloudburst/digest.hpp"
#include "cloudburst/svg.hpp"
#include "cloudburst/version.hpp"

namespace cloudburst {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
  out << content;
}

json test_result_to_json(const stats::TestResult& r) {
  json j;
  j["test"] = r.test;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  if (r.test == "anova") {
    j["df_between"] = r.df1;
    j["df_within"] = r.df2;
  } else {
    j["df"] = r.df1;
  }
  j["significant_at_0.05"] = r.significant;
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back({{"label", g.label}, {"n", g.n}, {"mean", g.mean},
                      {"sd", g.sd}});
  }
  j["groups"] = groups;
  return j;
}

const char* tier_name(Tier t) {
  switch (t) {
    case Tier::DeployUniversally: return "tier1_deploy_universally";
    case Tier::DeployWithCachingAwareness: return "tier2_caching_awareness";
    case Tier::DeployWithRuntimeMonitoring: return "tier3_runtime_monitoring";
  }
  return "unknown";
}

// Chart geometry shared by the study renderings.
constexpr double kW = 760;
constexpr double kH = 420;
constexpr double kLeft = 70;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 60;

double x_scale(double frac) { return kLeft + frac * (kW - kLeft - kRight); }
double y_scale(double frac) { return kH - kBottom - frac * (kH - kTop - kBottom); }

void draw_axes(SvgCanvas& svg, const std::string& title, double y_max) {
  svg.text(kW / 2, 22, title, 13, "middle");
  svg.line(kLeft, kTop, kLeft, kH - kBottom, "#333");
  svg.line(kLeft, kH - kBottom, kW - kRight, kH - kBottom, "#333");
  for (int i = 0; i <= 4; ++i) {
    const double frac = i / 4.0;
    const double y = y_scale(frac);
    svg.line(kLeft - 4, y, kLeft, y, "#333");
    svg.text(kLeft - 8, y + 4, fmt(frac * y_max, 2), 10, "end");
  }
}

std::string grid_svg(const GridReport& report) {
  SvgCanvas svg(kW, kH);
  draw_axes(svg, "Attribution score by vector and attacker level", 1.0);
  const double slot = (kW - kLeft - kRight) / kVectorCount;
  const double bar = slot / 4.5;
  for (std::size_t vi = 0; vi < kVectorCount; ++vi) {
    for (std::size_t li = 0; li < kLevelCount; ++li) {
      const GridCell& cell = report.cells[vi * kLevelCount + li];
      const double x = kLeft + vi * slot + (li + 0.6) * bar;
      const double y = y_scale(cell.cas.mean);
      svg.rect(x, y, bar * 0.85, kH - kBottom - y, series_color(li));
      svg.line(x + bar * 0.42, y_scale(cell.cas.mean + cell.cas.sd),
               x + bar * 0.42, y_scale(std::max(0.0, cell.cas.mean - cell.cas.sd)),
               "#222", 1.0);
    }
    svg.text(kLeft + (vi + 0.5) * slot, kH - kBottom + 16,
             std::string(to_string(kAllVectors[vi])).substr(0, 14), 9, "middle");
  }
  const char* levels[] = {"naive", "advanced", "apt"};
  for (std::size_t li = 0; li < kLevelCount; ++li) {
    svg.rect(kLeft + li * 110.0, kH - 24, 10, 10, series_color(li));
    svg.text(kLeft + li * 110.0 + 14, kH - 15, levels[li], 10);
  }
  return svg.finish();
}

std::string decay_svg(const DecayReport& report) {
  SvgCanvas svg(kW, kH);
  draw_axes(svg, "Attribution score decay under infrastructure churn", 1.0);
  double t_max = 1.0;
  for (const auto& row : report.rows) t_max = std::max(t_max, row.t);
  svg.line(kLeft, y_scale(0.85), kW - kRight, y_scale(0.85), "#999", 0.8);
  svg.text(kW - kRight - 4, y_scale(0.85) - 4, "0.85 threshold", 9, "end", "#777");
  for (std::size_t vi = 0; vi < kVectorCount; ++vi) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : report.rows) {
      if (index_of(row.vector) != vi) continue;
      pts.emplace_back(x_scale(row.t / t_max), y_scale(row.cas_mean));
    }
    svg.polyline(pts, series_color(vi));
    svg.rect(kLeft + 4.0, kTop + 4 + vi * 14.0, 9, 9, series_color(vi));
    svg.text(kLeft + 17.0, kTop + 12 + vi * 14.0,
             std::string(to_string(kAllVectors[vi])), 9);
  }
  for (double t : {0.0, 12.0, 24.0, 36.0, 48.0}) {
    if (t > t_max) continue;
    svg.text(x_scale(t / t_max), kH - kBottom + 16, fmt(t, 0) + "h", 10, "middle");
  }
  return svg.finish();
}

std::string provider_svg(const ProviderReport& report) {
  SvgCanvas svg(kW, kH);
  svg.text(kW / 2, 22, "Attribution score by vector and provider", 13, "middle");
  const double cell_w = (kW - kLeft - kRight) / kProviderCount;
  const double cell_h = (kH - kTop - kBottom) / kVectorCount;
  double lo = 1.0, hi = 0.0;
  for (const auto& c : report.cells) {
    lo = std::min(lo, c.cas_mean);
    hi = std::max(hi, c.cas_mean);
  }
  for (const auto& c : report.cells) {
    const double frac = hi > lo ? (c.cas_mean - lo) / (hi - lo) : 0.5;
    const int r = static_cast<int>(245 - 160 * frac);
    const int g = static_cast<int>(240 - 90 * frac);
    char color[16];
    std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, g, 250);
    const double x = kLeft + index_of(c.provider) * cell_w;
    const double y = kTop + index_of(c.vector) * cell_h;
    svg.rect(x, y, cell_w - 2, cell_h - 2, color, "#ddd");
    svg.text(x + cell_w / 2, y + cell_h / 2 + 4, fmt(c.cas_mean, 3), 11, "middle");
  }
  for (VectorClass v : kAllVectors) {
    svg.text(kLeft - 6, kTop + (index_of(v) + 0.55) * cell_h,
             std::string(to_string(v)).substr(0, 14), 9, "end");
  }
  for (CloudProvider p : kAllProviders) {
    svg.text(kLeft + (index_of(p) + 0.5) * cell_w, kH - kBottom + 16,
             std::string(to_string(p)), 10, "middle");
  }
  return svg.finish();
}

std::string scatter_svg(const ScatterReport& report) {
  SvgCanvas svg(kW, kH);
  draw_axes(svg, "Attribution score vs final posterior", 1.0);
  // ideal zone
  svg.rect(x_scale(0.70), y_scale(1.0), x_scale(1.0) - x_scale(0.70),
           y_scale(0.85) - y_scale(1.0), "#fef2f2", "#fca5a5");
  svg.text(x_scale(0.85), y_scale(0.93), "ideal zone", 9, "middle", "#b91c1c");
  for (const auto& p : report.points) {
    svg.circle(x_scale(p.mean_cas), y_scale(p.final_posterior), 2.2,
               series_color(index_of(p.level)), 0.55);
  }
  svg.text(kW - kRight - 4, kTop + 14, "r = " + fmt(report.pearson_r, 3), 11, "end");
  const char* levels[] = {"naive", "advanced", "apt"};
  for (std::size_t li = 0; li < kLevelCount; ++li) {
    svg.rect(kLeft + li * 110.0, kH - 24, 10, 10, series_color(li));
    svg.text(kLeft + li * 110.0 + 14, kH - 15, levels[li], 10);
  }
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg.text(x_scale(v), kH - kBottom + 16, fmt(v, 2), 10, "middle");
  }
  return svg.finish();
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> write_grid_report(
    const GridReport& report, const std::map<VectorClass, Tier>& tiers,
    const std::string& out_dir) {
  std::ostringstream csv;
  csv << "scope,vector,level,n_callbacks,cas_mean,cas_sd,dr_mean,dr_sd,"
         "ctd_mean,ctd_median,ctd_not_reached,posterior_mean,insufficient\n";
  for (const auto& c : report.cells) {
    csv << "cell," << to_string(c.vector) << ',' << to_string(c.level) << ','
        << c.n_callbacks << ',' << fmt(c.cas.mean) << ',' << fmt(c.cas.sd)
        << ',' << fmt(c.dr.mean) << ',' << fmt(c.dr.sd) << ','
        << fmt(c.ctd.mean) << ',' << fmt(c.ctd_median) << ','
        << c.ctd_not_reached << ',' << fmt(c.posterior.mean) << ','
        << (c.insufficient ? "true" : "false") << "\n";
  }
  for (const auto& v : report.per_vector) {
    csv << "vector," << to_string(v.vector) << ",all," << v.n_callbacks << ','
        << fmt(v.cas_mean) << ',' << fmt(v.cas_sd) << ',' << fmt(v.dr_mean)
        << ',' << fmt(v.dr_sd) << ',' << fmt(v.ctd_mean) << ','
        << fmt(v.ctd_median) << ",0," << fmt(v.posterior_mean) << ",false\n";
  }
  csv << "overall,all,all,,"
      << fmt(report.overall_cas) << ",," << fmt(report.overall_dr)
      << ",,,,,,false\n";

  json tests;
  tests["anova_cas"] = test_result_to_json(report.anova_cas);
  tests["anova_posterior"] = test_result_to_json(report.anova_posterior);
  tests["anova_ctd"] = test_result_to_json(report.anova_ctd);
  tests["campaign_callbacks"] = report.campaign_callbacks;
  json tier_json;
  for (const auto& [vector, tier] : tiers) {
    tier_json[std::string(to_string(vector))] = tier_name(tier);
  }
  tests["tiers"] = tier_json;
  json properties;
  for (const auto& v : report.per_vector) {
    properties[std::string(to_string(v.vector))] = {
        {"inherent_ephemeral_risk", v.inherent_ephemeral_risk},
        {"stealth", v.stealth},
        {"multi_cloud_support", v.multi_cloud_support},
        {"ttd_efficiency", v.ttd_efficiency}};
  }
  tests["vector_properties"] = properties;

  write_file(out_dir, "grid.csv", csv.str());
  write_file(out_dir, "grid_tests.json", tests.dump(2) + "\n");
  write_file(out_dir, "grid.svg", grid_svg(report));
  return {"grid.csv", "grid_tests.json", "grid.svg"};
}

std::vector<std::string> write_decay_report(const DecayReport& report,
                                            const std::string& out_dir) {
  std::ostringstream csv;
  csv << "vector,t_h,n,cas_mean,cas_sd,ep_mean\n";
  for (const auto& row : report.rows) {
    csv << to_string(row.vector) << ',' << fmt(row.t, 1) << ',' << row.n << ','
        << fmt(row.cas_mean) << ',' << fmt(row.cas_sd) << ','
        << fmt(row.ep_mean) << "\n";
  }

  json tests;
  json contrasts = json::array();
  for (std::size_t vi = 0; vi < report.contrasts.size(); ++vi) {
    json c = test_result_to_json(report.contrasts[vi]);
    c["vector"] = to_string(kAllVectors[vi]);
    c["cas_first"] = report.cas_first[vi];
    c["cas_last"] = report.cas_last[vi];
    c["delta"] = report.cas_last[vi] - report.cas_first[vi];
    contrasts.push_back(c);
  }
  tests["welch_first_vs_last"] = contrasts;

  write_file(out_dir, "decay.csv", csv.str());
  write_file(out_dir, "decay_tests.json", tests.dump(2) + "\n");
  write_file(out_dir, "decay.svg", decay_svg(report));
  return {"decay.csv", "decay_tests.json", "decay.svg"};
}

std::vector<std::string> write_provider_report(const ProviderReport& report,
                                               const std::string& out_dir) {
  std::ostringstream csv;
  csv << "scope,vector,provider,n_callbacks,cas_mean,cas_sd\n";
  for (const auto& c : report.cells) {
    csv << "cell," << to_string(c.vector) << ',' << to_string(c.provider)
        << ',' << c.n_callbacks << ',' << fmt(c.cas_mean) << ','
        << fmt(c.cas_sd) << "\n";
  }
  for (const auto& d : report.provider_distributions) {
    csv << "provider,all," << d.label << ',' << d.n << ',' << fmt(d.mean)
        << ',' << fmt(d.sd) << "\n";
  }

  json tests;
  tests["kruskal_wallis_provider"] = test_result_to_json(report.kruskal);

  write_file(out_dir, "providers.csv", csv.str());
  write_file(out_dir, "providers_tests.json", tests.dump(2) + "\n");
  write_file(out_dir, "providers.svg", provider_svg(report));
  return {"providers.csv", "providers_tests.json", "providers.svg"};
}

std::vector<std::string> write_scatter_report(const ScatterReport& report,
                                              const std::string& out_dir) {
  std::ostringstream csv;
  csv << "beacon_id,vector,provider,level,replica,n_callbacks,mean_cas,"
         "final_posterior\n";
  for (const auto& p : report.points) {
    csv << p.beacon_id << ',' << to_string(p.vector) << ','
        << to_string(p.provider) << ',' << to_string(p.level) << ','
        << p.replica << ',' << p.n_callbacks << ',' << fmt(p.mean_cas) << ','
        << fmt(p.final_posterior) << "\n";
  }

  json tests;
  tests["pearson_r"] = report.pearson_r;
  tests["ideal_zone_count"] = report.ideal_zone_count;
  tests["max_posterior"] = report.max_posterior;
  tests["n_points"] = report.points.size();
  tests["ideal_zone"] = {{"cas_min", 0.70}, {"posterior_min", 0.85}};

  write_file(out_dir, "scatter.csv", csv.str());
  write_file(out_dir, "scatter_tests.json", tests.dump(2) + "\n");
  write_file(out_dir, "scatter.svg", scatter_svg(report));
  return {"scatter.csv", "scatter_tests.json", "scatter.svg"};
}

void write_manifest(const ManifestInfo& info, const std::string& out_dir,
                    const std::vector<std::string>& files) {
  json manifest;
  manifest["tool"] = "cloudburst";
  manifest["version"] = kVersion;
  manifest["study"] = info.study;
  manifest["config_digest"] = info.config_digest;
  manifest["master_seed"] = info.master_seed;
  manifest["started_utc"] = info.started_utc;
  manifest["finished_utc"] = info.finished_utc;
  json inventory = json::array();
  for (const auto& name : files) {
    const fs::path path = fs::path(out_dir) / name;
    inventory.push_back({{"name", name}, {"fnv1a64", digest_file(path.string())}});
  }
  manifest["files"] = inventory;
  write_file(out_dir, "manifest.json", manifest.dump(2) + "\n");
}

std::string grid_summary_table(const GridReport& report,
                               const std::map<VectorClass, Tier>& tiers) {
  std::ostringstream out;
  out << "vector               cas     dr      ctd_mean  posterior  tier\n";
  for (const auto& v : report.per_vector) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-20s %-7.3f %-7.3f %-9.2f %-10.3f %d\n",
                  std::string(to_string(v.vector)).c_str(), v.cas_mean,
                  v.dr_mean, v.ctd_mean, v.posterior_mean,
                  static_cast<int>(tiers.at(v.vector)));
    out << line;
  }
  char tail[256];
  std::snprintf(tail, sizeof(tail),
                "overall              %-7.3f %-7.3f   (campaign callbacks: %zu)\n"
                "anova p: cas=%.3f posterior=%.3f ctd=%.3f\n",
                report.overall_cas, report.overall_dr,
                report.campaign_callbacks, report.anova_cas.p_value,
                report.anova_posterior.p_value, report.anova_ctd.p_value);
  out << tail;
  return out.str();
}

std::string decay_summary_table(const DecayReport& report) {
  std::ostringstream out;
  out << "vector               cas_t0  cas_t_end  delta    p\n";
  for (std::size_t vi = 0; vi < kVectorCount; ++vi) {
    char line[160];
    const double p = report.contrasts[vi].p_value;
    std::snprintf(line, sizeof(line), "%-20s %-7.3f %-10.3f %-+8.3f %s\n",
                  std::string(to_string(kAllVectors[vi])).c_str(),
                  report.cas_first[vi], report.cas_last[vi],
                  report.cas_last[vi] - report.cas_first[vi],
                  p < 0.001 ? "<0.001" : fmt(p, 3).c_str());
    out << line;
  }
  return out.str();
}

std::string provider_summary_table(const ProviderReport& report) {
  std::ostringstream out;
  out << "provider  n        cas_mean  cas_sd\n";
  for (const auto& d : report.provider_distributions) {
    char line[120];
    std::snprintf(line, sizeof(line), "%-9s %-8zu %-9.3f %-8.3f\n",
                  d.label.c_str(), d.n, d.mean, d.sd);
    out << line;
  }
  char tail[120];
  std::snprintf(tail, sizeof(tail), "kruskal-wallis: H=%.3f p=%.3f\n",
                report.kruskal.statistic, report.kruskal.p_value);
  out << tail;
  return out.str();
}

std::string scatter_summary_table(const ScatterReport& report) {
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "points=%zu pearson_r=%.3f ideal_zone=%zu max_posterior=%.3f\n",
                report.points.size(), report.pearson_r,
                report.ideal_zone_count, report.max_posterior);
  return buf;
}

}  // namespace cloudburst
