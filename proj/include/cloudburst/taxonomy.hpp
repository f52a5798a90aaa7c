#ifndef CLOUDBURST_TAXONOMY_HPP
#define CLOUDBURST_TAXONOMY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cloudburst/types.hpp"

namespace cloudburst {

/**
 * Static deployment properties of a vector class. inherent_ephemeral_risk
 * and iam_complexity drive the models; the remaining axes feed radar-style
 * reporting only and never enter the score.
 */
struct PropertyProfile {
  double inherent_ephemeral_risk = 0.0;
  double stealth = 0.0;
  double iam_complexity = 0.0;
  double multi_cloud_support = 0.0;
  double ttd_efficiency = 0.0;
};

const PropertyProfile& property_profile(VectorClass vector);

/// The 21 supported (vector, provider) deployments. Ordered by vector
/// declaration order, then provider order.
const std::vector<std::pair<VectorClass, CloudProvider>>& applicability_matrix();

bool is_applicable(VectorClass vector, CloudProvider provider);

/// Organisational flavour used to render beacon artifacts. Profiles load
/// from the `contexts` config section; "payflow.io" ships as the default.
struct ContextProfile {
  std::string label;
  std::string domain;
  std::string org_unit;
  std::vector<std::string> services;
  std::vector<std::string> environments;
};

ContextProfile payflow_context();

struct BeaconInstance {
  std::string id;
  VectorClass vector{};
  CloudProvider provider{};
  std::string context_label;
  std::string artifact_descriptor;
  double created_at_h = 0.0;
};

/**
 * Renders one beacon per applicability-matrix entry with provider-formatted
 * artifact text. Pure function of (seed, context): repeated calls give
 * identical descriptor lists.
 */
std::vector<BeaconInstance> generate_fleet(std::uint64_t seed,
                                           const ContextProfile& context);

/// Syntactic format check for a rendered descriptor. Descriptors are
/// plausible-format stubs, not live cloud resources, so validity means
/// "matches the provider's artifact grammar", nothing more.
bool validate_descriptor(VectorClass vector, CloudProvider provider,
                         const std::string& descriptor);

/// One beacon per line, stable key order.
std::string fleet_to_jsonl(const std::vector<BeaconInstance>& fleet);

std::vector<BeaconInstance> fleet_from_jsonl(const std::string& text);

}  // namespace cloudburst

#endif  // CLOUDBURST_TAXONOMY_HPP
