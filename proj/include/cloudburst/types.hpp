#ifndef CLOUDBURST_TYPES_HPP
#define CLOUDBURST_TYPES_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cloudburst {

/// Beacon vector classes. Declaration order is the canonical tie-break
/// order used by tier recommendation and report layout.
enum class VectorClass {
  S3PresignedUrl,
  ContainerImage,
  IamCanaryRole,
  TerraformModule,
  K8sSecret,
  ServerlessTrigger,
};

inline constexpr std::size_t kVectorCount = 6;

inline constexpr std::array<VectorClass, kVectorCount> kAllVectors = {
    VectorClass::S3PresignedUrl,  VectorClass::ContainerImage,
    VectorClass::IamCanaryRole,   VectorClass::TerraformModule,
    VectorClass::K8sSecret,       VectorClass::ServerlessTrigger,
};

enum class CloudProvider { Aws, Gcp, Azure, Oci };

inline constexpr std::size_t kProviderCount = 4;

inline constexpr std::array<CloudProvider, kProviderCount> kAllProviders = {
    CloudProvider::Aws, CloudProvider::Gcp, CloudProvider::Azure,
    CloudProvider::Oci};

enum class SdkClass { Curl, ScriptedSdk, NativeSdk };

inline constexpr std::size_t kSdkCount = 3;

enum class AttackerLevel { Naive, Advanced, Apt };

inline constexpr std::size_t kLevelCount = 3;

inline constexpr std::array<AttackerLevel, kLevelCount> kAllLevels = {
    AttackerLevel::Naive, AttackerLevel::Advanced, AttackerLevel::Apt};

/// Raised when a configuration file or profile reference is invalid.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when calibration cannot reproduce an anchor within tolerance.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view to_string(VectorClass v);
std::string_view to_string(CloudProvider p);
std::string_view to_string(SdkClass s);
std::string_view to_string(AttackerLevel l);

VectorClass vector_from_string(std::string_view name);
CloudProvider provider_from_string(std::string_view name);
SdkClass sdk_from_string(std::string_view name);
AttackerLevel level_from_string(std::string_view name);

inline std::size_t index_of(VectorClass v) {
  return static_cast<std::size_t>(v);
}
inline std::size_t index_of(CloudProvider p) {
  return static_cast<std::size_t>(p);
}
inline std::size_t index_of(SdkClass s) { return static_cast<std::size_t>(s); }
inline std::size_t index_of(AttackerLevel l) {
  return static_cast<std::size_t>(l);
}

}  // namespace cloudburst

#endif  // CLOUDBURST_TYPES_HPP
