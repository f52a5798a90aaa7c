#include "cloudburst/types.hpp"

namespace cloudburst {

std::string_view to_string(VectorClass v) {
  switch (v) {
    case VectorClass::S3PresignedUrl: return "s3_presigned_url";
    case VectorClass::ContainerImage: return "container_image";
    case VectorClass::IamCanaryRole: return "iam_canary_role";
    case VectorClass::TerraformModule: return "terraform_module";
    case VectorClass::K8sSecret: return "k8s_secret";
    case VectorClass::ServerlessTrigger: return "serverless_trigger";
  }
  return "unknown";
}

std::string_view to_string(CloudProvider p) {
  switch (p) {
    case CloudProvider::Aws: return "aws";
    case CloudProvider::Gcp: return "gcp";
    case CloudProvider::Azure: return "azure";
    case CloudProvider::Oci: return "oci";
  }
  return "unknown";
}

std::string_view to_string(SdkClass s) {
  switch (s) {
    case SdkClass::Curl: return "curl";
    case SdkClass::ScriptedSdk: return "scripted-sdk";
    case SdkClass::NativeSdk: return "native-sdk";
  }
  return "unknown";
}

std::string_view to_string(AttackerLevel l) {
  switch (l) {
    case AttackerLevel::Naive: return "naive";
    case AttackerLevel::Advanced: return "advanced";
    case AttackerLevel::Apt: return "apt";
  }
  return "unknown";
}

VectorClass vector_from_string(std::string_view name) {
  for (VectorClass v : kAllVectors) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError("unknown vector class: " + std::string(name));
}

CloudProvider provider_from_string(std::string_view name) {
  for (CloudProvider p : kAllProviders) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown cloud provider: " + std::string(name));
}

SdkClass sdk_from_string(std::string_view name) {
  if (name == "curl") return SdkClass::Curl;
  if (name == "scripted-sdk") return SdkClass::ScriptedSdk;
  if (name == "native-sdk") return SdkClass::NativeSdk;
  throw ConfigError("unknown sdk class: " + std::string(name));
}

AttackerLevel level_from_string(std::string_view name) {
  if (name == "naive") return AttackerLevel::Naive;
  if (name == "advanced") return AttackerLevel::Advanced;
  if (name == "apt") return AttackerLevel::Apt;
  throw ConfigError("unknown attacker level: " + std::string(name));
}

}  // namespace cloudburst
