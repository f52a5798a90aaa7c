// cloudburst command-line front end.
//
// Exit codes are a stable contract:
//   0  success
//   2  configuration or input error
//   3  output I/O error
//   4  calibration failure

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cloudburst/calibrate.hpp"
#include "cloudburst/config.hpp"
#include "cloudburst/report.hpp"
#include "cloudburst/version.hpp"

namespace fs = std::filesystem;
using namespace cloudburst;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitCalibration = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::int64_t seed = -1;
  int jobs = 0;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config,-c", opts.config_path,
                  "Config file (falls back to $CLOUDBURST_CONFIG, then to "
                  "built-in calibrated defaults)");
  cmd->add_option("--out,-o", opts.out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--seed,-s", opts.seed,
                  "Master seed override (default: value from config)");
  cmd->add_option("--jobs,-j", opts.jobs,
                  "Worker threads (default: machine parallelism)");
  cmd->add_flag("--verbose,-v", opts.verbose, "Log progress to stderr");
}

Config resolve_config(const CommonOptions& opts) {
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CLOUDBURST_CONFIG")) path = env;
  }
  Config config = path.empty() ? default_config() : load_config(path);
  if (opts.seed >= 0) {
    config.experiment.master_seed = static_cast<std::uint64_t>(opts.seed);
  }
  return config;
}

int effective_jobs(const CommonOptions& opts) {
  if (opts.jobs > 0) return opts.jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void log_verbose(const CommonOptions& opts, const std::string& message) {
  if (opts.verbose) std::cerr << "[cloudburst] " << message << "\n";
}

void check_writable(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + dir);
  const fs::path probe = fs::path(dir) / ".write-probe";
  std::ofstream out(probe);
  if (!out) throw std::runtime_error("output directory not writable: " + dir);
  out.close();
  fs::remove(probe, ec);
}

template <typename StudyFn>
int run_study(const char* study, const CommonOptions& opts, StudyFn&& fn) {
  Config config;
  try {
    config = resolve_config(opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    check_writable(opts.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  ManifestInfo info;
  info.study = study;
  info.config_digest = config_digest(config);
  info.master_seed = config.experiment.master_seed;
  info.started_utc = utc_timestamp();
  log_verbose(opts, std::string("running ") + study + " study");
  try {
    const std::vector<std::string> files = fn(config);
    info.finished_utc = utc_timestamp();
    write_manifest(info, opts.out_dir, files);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  log_verbose(opts, std::string(study) + " study complete");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulation laboratory and scoring engine for "
               "cloud-native beacon attribution"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions grid_opts, decay_opts, providers_opts, scatter_opts, forge_opts;

  CLI::App* grid = app.add_subcommand(
      "grid", "Vector x attacker study: score, resistance, detection speed");
  add_common(grid, grid_opts);

  CLI::App* decay = app.add_subcommand(
      "decay", "Attribution decay under churn over the study timepoints");
  add_common(decay, decay_opts);

  CLI::App* providers = app.add_subcommand(
      "providers", "Per-provider score analysis with provider-effect test");
  add_common(providers, providers_opts);

  CLI::App* scatter = app.add_subcommand(
      "scatter", "Score vs posterior study with ideal-zone occupancy");
  add_common(scatter, scatter_opts);

  CLI::App* forge = app.add_subcommand(
      "forge", "Render the beacon fleet as JSON lines");
  std::string forge_context = "payflow.io";
  std::string forge_output = "fleet.jsonl";
  forge->add_option("--context", forge_context, "Organisational context profile")
      ->capture_default_str();
  forge->add_option("--output", forge_output, "Output path")
      ->capture_default_str();
  add_common(forge, forge_opts);

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Fit model coefficients to the bundled anchor targets");
  std::string anchors_path = "data/anchors.json";
  std::string calibrated_path = "data/cloudburst.json";
  std::int64_t calibrate_seed = 4242;
  bool calibrate_verbose = false;
  calibrate->add_option("--anchors", anchors_path, "Anchor targets file")
      ->capture_default_str();
  calibrate->add_option("--write", calibrated_path, "Calibrated config path")
      ->capture_default_str();
  calibrate->add_option("--seed,-s", calibrate_seed, "Search seed")
      ->capture_default_str();
  calibrate->add_flag("--verbose,-v", calibrate_verbose, "Log progress");

  CLI11_PARSE(app, argc, argv);

  if (grid->parsed()) {
    return run_study("grid", grid_opts, [&](const Config& config) {
      const GridReport report = run_grid(config, effective_jobs(grid_opts));
      const auto tiers = recommend_tiers(report);
      auto files = write_grid_report(report, tiers, grid_opts.out_dir);
      std::cout << grid_summary_table(report, tiers);
      return files;
    });
  }
  if (decay->parsed()) {
    return run_study("decay", decay_opts, [&](const Config& config) {
      const DecayReport report = run_decay(config, effective_jobs(decay_opts));
      auto files = write_decay_report(report, decay_opts.out_dir);
      std::cout << decay_summary_table(report);
      return files;
    });
  }
  if (providers->parsed()) {
    return run_study("providers", providers_opts, [&](const Config& config) {
      const ProviderReport report =
          run_provider_analysis(config, effective_jobs(providers_opts));
      auto files = write_provider_report(report, providers_opts.out_dir);
      std::cout << provider_summary_table(report);
      return files;
    });
  }
  if (scatter->parsed()) {
    return run_study("scatter", scatter_opts, [&](const Config& config) {
      const ScatterReport report =
          run_scatter_study(config, effective_jobs(scatter_opts));
      auto files = write_scatter_report(report, scatter_opts.out_dir);
      std::cout << scatter_summary_table(report);
      return files;
    });
  }
  if (forge->parsed()) {
    Config config;
    try {
      config = resolve_config(forge_opts);
      const auto fleet = generate_fleet(config.experiment.master_seed,
                                        config.context_profile(forge_context));
      for (const auto& beacon : fleet) {
        if (!validate_descriptor(beacon.vector, beacon.provider,
                                 beacon.artifact_descriptor)) {
          throw std::runtime_error("descriptor failed format validation: " +
                                   beacon.id);
        }
      }
      std::ofstream out(forge_output, std::ios::binary);
      if (!out) {
        std::cerr << "io error: cannot write " << forge_output << "\n";
        return kExitIo;
      }
      out << fleet_to_jsonl(fleet);
      std::cout << fleet.size() << " beacons -> " << forge_output << "\n";
      return kExitOk;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  if (calibrate->parsed()) {
    try {
      if (calibrate_verbose) std::cerr << "[cloudburst] calibrating\n";
      const CalibrationResult result = calibrate_all(
          anchors_path, static_cast<std::uint64_t>(calibrate_seed));
      write_calibrated_config(result, calibrated_path);
      std::cout << residual_table(result.residuals);
      std::cout << "calibrated config -> " << calibrated_path << "\n";
      return kExitOk;
    } catch (const CalibrationError& e) {
      std::cerr << "calibration failure: " << e.what() << "\n";
      return kExitCalibration;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "io error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  return kExitOk;
}
