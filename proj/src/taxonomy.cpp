#include "cloudburst/taxonomy.hpp"

#include <array>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cloudburst/digest.hpp"
#include "cloudburst/rng.hpp"

namespace cloudburst {

namespace {

using json = nlohmann::ordered_json;

// Ephemeral-risk values are fixed model constants; the reporting axes
// follow the radar ordering (IAM most balanced, K8s lowest multi-cloud,
// S3 lowest-risk/highest-multicloud combination).
constexpr std::array<PropertyProfile, kVectorCount> kProfiles = {{
    /* S3PresignedUrl  */ {0.10, 0.90, 0.25, 0.75, 0.80},
    /* ContainerImage  */ {0.45, 0.74, 0.35, 1.00, 0.85},
    /* IamCanaryRole   */ {0.05, 0.87, 0.70, 1.00, 0.73},
    /* TerraformModule */ {0.30, 0.77, 0.45, 1.00, 0.74},
    /* K8sSecret       */ {0.65, 0.74, 0.55, 0.40, 0.73},
    /* ServerlessTrigger*/{0.55, 0.61, 0.40, 0.75, 0.85},
}};

std::string pick(Rng& rng, const std::vector<std::string>& options) {
  return options[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
}

std::string digits(Rng& rng, int count) {
  std::string out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(static_cast<char>('0' + rng.uniform_int(0, 9)));
  return out;
}

std::string hex(Rng& rng, int count) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(kHex[rng.uniform_int(0, 15)]);
  return out;
}

std::string upper_alnum(Rng& rng, int count) {
  static const char* kChars = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";
  std::string out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(kChars[rng.uniform_int(0, 31)]);
  return out;
}

std::string lower_alnum(Rng& rng, int count) {
  static const char* kChars = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(kChars[rng.uniform_int(0, 35)]);
  return out;
}

std::string region_for(CloudProvider p, Rng& rng) {
  switch (p) {
    case CloudProvider::Aws:
      return pick(rng, {"us-east-1", "eu-west-1", "us-west-2"});
    case CloudProvider::Gcp:
      return pick(rng, {"us-central1", "europe-west1", "us-east4"});
    case CloudProvider::Azure:
      return pick(rng, {"eastus", "westeurope", "centralus"});
    case CloudProvider::Oci:
      return pick(rng, {"us-ashburn-1", "eu-frankfurt-1", "us-phoenix-1"});
  }
  return "us-east-1";
}

std::string render_s3_presigned(CloudProvider p, const ContextProfile& ctx,
                                Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  const std::string object = service + "-export-" + digits(rng, 4) + ".csv";
  const std::string date = "2025" + digits(rng, 2) + digits(rng, 2);
  std::ostringstream out;
  switch (p) {
    case CloudProvider::Aws: {
      const std::string bucket = ctx.org_unit + "-" + service + "-prod";
      out << "https://" << bucket << ".s3." << region_for(p, rng)
          << ".amazonaws.com/" << object
          << "?X-Amz-Algorithm=AWS4-HMAC-SHA256"
          << "&X-Amz-Credential=AKIA" << upper_alnum(rng, 16)
          << "%2F" << date << "%2Fs3%2Faws4_request"
          << "&X-Amz-Date=" << date << "T000000Z"
          << "&X-Amz-Expires=604800&X-Amz-SignedHeaders=host"
          << "&X-Amz-Signature=" << hex(rng, 64);
      break;
    }
    case CloudProvider::Gcp: {
      const std::string bucket = ctx.org_unit + "-" + service + "-prod";
      out << "https://storage.googleapis.com/" << bucket << "/" << object
          << "?X-Goog-Algorithm=GOOG4-RSA-SHA256"
          << "&X-Goog-Credential=" << service << "-svc%40" << ctx.org_unit
          << "-prod.iam.gserviceaccount.com%2F" << date
          << "%2Fauto%2Fstorage%2Fgoog4_request"
          << "&X-Goog-Date=" << date << "T000000Z"
          << "&X-Goog-Expires=604800&X-Goog-SignedHeaders=host"
          << "&X-Goog-Signature=" << hex(rng, 64);
      break;
    }
    case CloudProvider::Azure: {
      const std::string account = ctx.org_unit + lower_alnum(rng, 4);
      out << "https://" << account << ".blob.core.windows.net/" << service
          << "/" << object << "?sv=2024-05-04&se=2026-01-" << (10 + rng.uniform_int(0, 19))
          << "T00%3A00%3A00Z&sr=b&sp=r&sig=" << lower_alnum(rng, 43) << "%3D";
      break;
    }
    default:
      throw std::logic_error("presigned URL not applicable to provider");
  }
  return out.str();
}

std::string render_container_image(CloudProvider p, const ContextProfile& ctx,
                                   Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  const std::string tag = "v" + std::to_string(rng.uniform_int(1, 4)) + "." +
                          std::to_string(rng.uniform_int(0, 12)) + "." +
                          std::to_string(rng.uniform_int(0, 9));
  std::ostringstream out;
  switch (p) {
    case CloudProvider::Aws:
      out << digits(rng, 12) << ".dkr.ecr." << region_for(p, rng)
          << ".amazonaws.com/" << ctx.org_unit << "/" << service << ":" << tag
          << "@sha256:" << hex(rng, 64);
      break;
    case CloudProvider::Gcp:
      out << region_for(p, rng) << "-docker.pkg.dev/" << ctx.org_unit
          << "-prod/" << service << "/" << service << ":" << tag
          << "@sha256:" << hex(rng, 64);
      break;
    case CloudProvider::Azure:
      out << ctx.org_unit << "registry.azurecr.io/" << service << ":" << tag
          << "@sha256:" << hex(rng, 64);
      break;
    case CloudProvider::Oci:
      out << region_for(p, rng) << ".ocir.io/" << ctx.org_unit << "tenancy/"
          << service << ":" << tag << "@sha256:" << hex(rng, 64);
      break;
  }
  return out.str();
}

std::string render_iam_canary(CloudProvider p, const ContextProfile& ctx,
                              Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  const std::string role = service + "-" + pick(rng, {"deploy", "audit", "backup", "readonly"}) + "-role";
  std::ostringstream out;
  switch (p) {
    case CloudProvider::Aws:
      out << "arn:aws:iam::" << digits(rng, 12) << ":role/" << role;
      break;
    case CloudProvider::Gcp:
      out << role << "@" << ctx.org_unit << "-prod.iam.gserviceaccount.com";
      break;
    case CloudProvider::Azure:
      out << "/subscriptions/" << hex(rng, 8) << "-" << hex(rng, 4) << "-"
          << hex(rng, 4) << "-" << hex(rng, 4) << "-" << hex(rng, 12)
          << "/resourcegroups/" << ctx.org_unit
          << "-prod/providers/Microsoft.ManagedIdentity/userAssignedIdentities/"
          << role;
      break;
    case CloudProvider::Oci:
      out << "ocid1.user.oc1.." << lower_alnum(rng, 60);
      break;
  }
  return out.str();
}

std::string render_terraform_module(CloudProvider p, const ContextProfile& ctx,
                                    Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  std::string label = service;
  for (char& c : label) {
    if (c == '-') c = '_';
  }
  const char* tf_provider = "aws";
  switch (p) {
    case CloudProvider::Aws: tf_provider = "aws"; break;
    case CloudProvider::Gcp: tf_provider = "google"; break;
    case CloudProvider::Azure: tf_provider = "azurerm"; break;
    case CloudProvider::Oci: tf_provider = "oci"; break;
  }
  std::ostringstream out;
  out << "module \"" << label << "_baseline\" {\n"
      << "  source  = \"registry." << ctx.domain << "/" << ctx.org_unit << "/"
      << service << "-baseline/" << tf_provider << "\"\n"
      << "  version = \"~> " << rng.uniform_int(1, 3) << "."
      << rng.uniform_int(0, 9) << "\"\n"
      << "}\n"
      << "\n"
      << "data \"http\" \"" << label << "_compliance_manifest\" {\n"
      << "  url = \"https://modules." << ctx.domain << "/" << tf_provider
      << "/" << service << "/manifest-" << hex(rng, 12) << ".json\"\n"
      << "}\n";
  return out.str();
}

std::string render_k8s_secret(CloudProvider p, const ContextProfile& ctx,
                              Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  const char* cluster_hint = "eks";
  switch (p) {
    case CloudProvider::Aws: cluster_hint = "eks"; break;
    case CloudProvider::Gcp: cluster_hint = "gke"; break;
    case CloudProvider::Azure: cluster_hint = "aks"; break;
    default:
      throw std::logic_error("k8s secret not applicable to provider");
  }
  std::ostringstream out;
  out << "apiVersion: v1\n"
      << "kind: Secret\n"
      << "metadata:\n"
      << "  name: " << service << "-db-credentials\n"
      << "  namespace: " << service << "-" << cluster_hint << "-prod\n"
      << "  annotations:\n"
      << "    audit." << ctx.domain << "/notify: \"https://hooks."
      << ctx.domain << "/v1/secret-access/" << hex(rng, 16) << "\"\n"
      << "type: Opaque\n"
      << "data:\n"
      << "  password: " << lower_alnum(rng, 24) << "==\n";
  return out.str();
}

std::string render_serverless_trigger(CloudProvider p,
                                      const ContextProfile& ctx, Rng& rng) {
  const std::string service = pick(rng, ctx.services);
  const std::string hook =
      "https://hooks." + ctx.domain + "/v1/invoke/" + hex(rng, 16);
  std::ostringstream out;
  switch (p) {
    case CloudProvider::Aws:
      out << "# lambda: " << service << "-reconcile-job\n"
          << "def lambda_handler(event, context):\n"
          << "    import urllib.request\n"
          << "    urllib.request.urlopen(\"" << hook << "\", timeout=3)\n"
          << "    return {\"statusCode\": 204}\n";
      break;
    case CloudProvider::Gcp:
      out << "# cloud function: " << service << "-reconcile-job\n"
          << "def handler(request):\n"
          << "    import urllib.request\n"
          << "    urllib.request.urlopen(\"" << hook << "\", timeout=3)\n"
          << "    return (\"\", 204)\n";
      break;
    case CloudProvider::Azure:
      out << "# azure function: " << service << "-reconcile-job\n"
          << "def main(req):\n"
          << "    import urllib.request\n"
          << "    urllib.request.urlopen(\"" << hook << "\", timeout=3)\n"
          << "    return None\n";
      break;
    default:
      throw std::logic_error("serverless trigger not applicable to provider");
  }
  return out.str();
}

std::string render_descriptor(VectorClass v, CloudProvider p,
                              const ContextProfile& ctx, Rng& rng) {
  switch (v) {
    case VectorClass::S3PresignedUrl: return render_s3_presigned(p, ctx, rng);
    case VectorClass::ContainerImage: return render_container_image(p, ctx, rng);
    case VectorClass::IamCanaryRole: return render_iam_canary(p, ctx, rng);
    case VectorClass::TerraformModule: return render_terraform_module(p, ctx, rng);
    case VectorClass::K8sSecret: return render_k8s_secret(p, ctx, rng);
    case VectorClass::ServerlessTrigger: return render_serverless_trigger(p, ctx, rng);
  }
  throw std::logic_error("unknown vector class");
}

const std::regex& descriptor_pattern(VectorClass v, CloudProvider p) {
  // Patterns assert the load-bearing structure: identifiers in the
  // provider's grammar and, for signed URLs, a present expiry parameter.
  static const std::regex s3_aws(
      R"(^https://[a-z0-9.-]+\.s3\.[a-z0-9-]+\.amazonaws\.com/.+\?.*X-Amz-Credential=AKIA[A-Z2-7]{16}.*X-Amz-Expires=\d+.*X-Amz-Signature=[0-9a-f]{64}$)");
  static const std::regex s3_gcp(
      R"(^https://storage\.googleapis\.com/.+\?.*X-Goog-Expires=\d+.*X-Goog-Signature=[0-9a-f]{64}$)");
  static const std::regex s3_azure(
      R"(^https://[a-z0-9]+\.blob\.core\.windows\.net/.+\?.*se=[0-9TZ%A:-]+.*sig=[A-Za-z0-9%]+$)");
  static const std::regex img_aws(
      R"(^\d{12}\.dkr\.ecr\.[a-z0-9-]+\.amazonaws\.com/[a-z0-9/._-]+:[A-Za-z0-9._-]+@sha256:[0-9a-f]{64}$)");
  static const std::regex img_gcp(
      R"(^[a-z0-9-]+-docker\.pkg\.dev/[a-z0-9-]+/[a-z0-9/._-]+:[A-Za-z0-9._-]+@sha256:[0-9a-f]{64}$)");
  static const std::regex img_azure(
      R"(^[a-z0-9]+\.azurecr\.io/[a-z0-9/._-]+:[A-Za-z0-9._-]+@sha256:[0-9a-f]{64}$)");
  static const std::regex img_oci(
      R"(^[a-z0-9-]+\.ocir\.io/[a-z0-9/._-]+:[A-Za-z0-9._-]+@sha256:[0-9a-f]{64}$)");
  static const std::regex iam_aws(R"(^arn:aws:iam::\d{12}:role/[A-Za-z0-9+=,.@_/-]+$)");
  static const std::regex iam_gcp(
      R"(^[a-z0-9-]+@[a-z0-9-]+\.iam\.gserviceaccount\.com$)");
  static const std::regex iam_azure(
      R"(^/subscriptions/[0-9a-f-]{36}/resourcegroups/[a-z0-9-]+/providers/Microsoft\.ManagedIdentity/userAssignedIdentities/[A-Za-z0-9-]+$)");
  static const std::regex iam_oci(R"(^ocid1\.user\.oc1\.\.[a-z0-9]{60}$)");
  static const std::regex tf_any(
      R"(module\s+"[A-Za-z0-9_]+"\s*\{[\s\S]*source\s*=\s*"registry\.[\s\S]*\}[\s\S]*data\s+"http"\s+"[A-Za-z0-9_]+"\s*\{[\s\S]*url\s*=\s*"https://[\s\S]*\})");
  static const std::regex k8s_any(
      R"(apiVersion: v1\nkind: Secret\n[\s\S]*annotations:\n[\s\S]*notify: "https://[\s\S]*type: Opaque\n[\s\S]*data:)");
  static const std::regex sls_aws(R"(def lambda_handler\(event, context\):[\s\S]*urlopen\("https://)");
  static const std::regex sls_gcp(R"(def handler\(request\):[\s\S]*urlopen\("https://)");
  static const std::regex sls_azure(R"(def main\(req\):[\s\S]*urlopen\("https://)");

  switch (v) {
    case VectorClass::S3PresignedUrl:
      if (p == CloudProvider::Aws) return s3_aws;
      if (p == CloudProvider::Gcp) return s3_gcp;
      return s3_azure;
    case VectorClass::ContainerImage:
      if (p == CloudProvider::Aws) return img_aws;
      if (p == CloudProvider::Gcp) return img_gcp;
      if (p == CloudProvider::Azure) return img_azure;
      return img_oci;
    case VectorClass::IamCanaryRole:
      if (p == CloudProvider::Aws) return iam_aws;
      if (p == CloudProvider::Gcp) return iam_gcp;
      if (p == CloudProvider::Azure) return iam_azure;
      return iam_oci;
    case VectorClass::TerraformModule: return tf_any;
    case VectorClass::K8sSecret: return k8s_any;
    case VectorClass::ServerlessTrigger:
      if (p == CloudProvider::Aws) return sls_aws;
      if (p == CloudProvider::Gcp) return sls_gcp;
      return sls_azure;
  }
  throw std::logic_error("unknown vector class");
}

}  // namespace

const PropertyProfile& property_profile(VectorClass vector) {
  return kProfiles[index_of(vector)];
}

const std::vector<std::pair<VectorClass, CloudProvider>>& applicability_matrix() {
  static const std::vector<std::pair<VectorClass, CloudProvider>> kMatrix = [] {
    std::vector<std::pair<VectorClass, CloudProvider>> m;
    const auto all = {CloudProvider::Aws, CloudProvider::Gcp,
                      CloudProvider::Azure, CloudProvider::Oci};
    const auto no_oci = {CloudProvider::Aws, CloudProvider::Gcp,
                         CloudProvider::Azure};
    for (CloudProvider p : no_oci) m.emplace_back(VectorClass::S3PresignedUrl, p);
    for (CloudProvider p : all) m.emplace_back(VectorClass::ContainerImage, p);
    for (CloudProvider p : all) m.emplace_back(VectorClass::IamCanaryRole, p);
    for (CloudProvider p : all) m.emplace_back(VectorClass::TerraformModule, p);
    for (CloudProvider p : no_oci) m.emplace_back(VectorClass::K8sSecret, p);
    for (CloudProvider p : no_oci) m.emplace_back(VectorClass::ServerlessTrigger, p);
    return m;
  }();
  return kMatrix;
}

bool is_applicable(VectorClass vector, CloudProvider provider) {
  for (const auto& [v, p] : applicability_matrix()) {
    if (v == vector && p == provider) return true;
  }
  return false;
}

ContextProfile payflow_context() {
  ContextProfile ctx;
  ctx.label = "payflow.io";
  ctx.domain = "payflow.io";
  ctx.org_unit = "payflow";
  ctx.services = {"payments-ledger", "card-vault", "settlement-api",
                  "fraud-scoring", "kyc-pipeline", "treasury-sync"};
  ctx.environments = {"prod", "staging"};
  return ctx;
}

std::vector<BeaconInstance> generate_fleet(std::uint64_t seed,
                                           const ContextProfile& context) {
  if (context.label.empty() || context.services.empty()) {
    throw ConfigError("context profile is incomplete");
  }
  std::vector<BeaconInstance> fleet;
  fleet.reserve(applicability_matrix().size());
  int ordinal = 0;
  for (const auto& [vector, provider] : applicability_matrix()) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(index_of(vector)),
                               static_cast<std::uint64_t>(index_of(provider)),
                               fnv1a64(context.label)}));
    BeaconInstance b;
    b.id = "bcn-" + std::string(to_string(vector)) + "-" +
           std::string(to_string(provider)) + "-" +
           std::to_string(100 + ordinal);
    b.vector = vector;
    b.provider = provider;
    b.context_label = context.label;
    b.artifact_descriptor = render_descriptor(vector, provider, context, rng);
    b.created_at_h = 0.0;
    fleet.push_back(std::move(b));
    ++ordinal;
  }
  return fleet;
}

bool validate_descriptor(VectorClass vector, CloudProvider provider,
                         const std::string& descriptor) {
  if (descriptor.empty() || !is_applicable(vector, provider)) return false;
  return std::regex_search(descriptor, descriptor_pattern(vector, provider));
}

std::string fleet_to_jsonl(const std::vector<BeaconInstance>& fleet) {
  std::ostringstream out;
  for (const auto& b : fleet) {
    json line;
    line["id"] = b.id;
    line["vector"] = to_string(b.vector);
    line["provider"] = to_string(b.provider);
    line["context"] = b.context_label;
    line["artifact"] = b.artifact_descriptor;
    line["created_at_h"] = b.created_at_h;
    out << line.dump() << "\n";
  }
  return out.str();
}

std::vector<BeaconInstance> fleet_from_jsonl(const std::string& text) {
  std::vector<BeaconInstance> fleet;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    BeaconInstance b;
    b.id = j.at("id").get<std::string>();
    b.vector = vector_from_string(j.at("vector").get<std::string>());
    b.provider = provider_from_string(j.at("provider").get<std::string>());
    b.context_label = j.at("context").get<std::string>();
    b.artifact_descriptor = j.at("artifact").get<std::string>();
    b.created_at_h = j.at("created_at_h").get<double>();
    fleet.push_back(std::move(b));
  }
  return fleet;
}

}  // namespace cloudburst
