#ifndef CLOUDBURST_CALIBRATE_HPP
#define CLOUDBURST_CALIBRATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cloudburst/config.hpp"

namespace cloudburst {

struct AnchorResidual {
  std::string anchor;
  double target = 0.0;
  double achieved = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

struct CalibrationResult {
  Config config;
  std::vector<AnchorResidual> residuals;
};

/**
 * End-to-end fit against the bundled anchor targets, in dependency order:
 * decay-rate solve, fidelity penalty fit, scanner matrix solve, churn
 * attenuation solve, then the stochastic confidence/posterior search, and
 * a final grid verification pass. Deterministic given (anchors, seed).
 * Throws CalibrationError naming the first anchor whose residual exceeds
 * its tolerance.
 */
CalibrationResult calibrate_all(const std::string& anchors_path,
                                std::uint64_t seed);

/// Fixed-width residual table for console output.
std::string residual_table(const std::vector<AnchorResidual>& residuals);

/// Writes the calibrated config with a provenance section recording the
/// per-anchor residuals.
void write_calibrated_config(const CalibrationResult& result,
                             const std::string& path);

}  // namespace cloudburst

#endif  // CLOUDBURST_CALIBRATE_HPP
