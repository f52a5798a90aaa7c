#include <set>

#include <doctest.h>

#include "cloudburst/taxonomy.hpp"

using namespace cloudburst;

TEST_CASE("applicability matrix is exactly the 21 supported deployments") {
  const auto& matrix = applicability_matrix();
  CHECK(matrix.size() == 21);

  std::set<std::pair<VectorClass, CloudProvider>> actual(matrix.begin(),
                                                         matrix.end());
  CHECK(actual.size() == 21);  // no duplicates

  std::set<std::pair<VectorClass, CloudProvider>> expected;
  for (CloudProvider p : kAllProviders) {
    expected.emplace(VectorClass::ContainerImage, p);
    expected.emplace(VectorClass::IamCanaryRole, p);
    expected.emplace(VectorClass::TerraformModule, p);
  }
  for (CloudProvider p : {CloudProvider::Aws, CloudProvider::Gcp, CloudProvider::Azure}) {
    expected.emplace(VectorClass::S3PresignedUrl, p);
    expected.emplace(VectorClass::K8sSecret, p);
    expected.emplace(VectorClass::ServerlessTrigger, p);
  }
  CHECK(actual == expected);

  CHECK(is_applicable(VectorClass::IamCanaryRole, CloudProvider::Oci));
  CHECK_FALSE(is_applicable(VectorClass::K8sSecret, CloudProvider::Oci));
  CHECK_FALSE(is_applicable(VectorClass::S3PresignedUrl, CloudProvider::Oci));
}

TEST_CASE("property profiles carry the fixed ephemeral-risk constants") {
  CHECK(property_profile(VectorClass::S3PresignedUrl).inherent_ephemeral_risk ==
        doctest::Approx(0.10));
  CHECK(property_profile(VectorClass::ContainerImage).inherent_ephemeral_risk ==
        doctest::Approx(0.45));
  CHECK(property_profile(VectorClass::IamCanaryRole).inherent_ephemeral_risk ==
        doctest::Approx(0.05));
  CHECK(property_profile(VectorClass::TerraformModule).inherent_ephemeral_risk ==
        doctest::Approx(0.30));
  CHECK(property_profile(VectorClass::K8sSecret).inherent_ephemeral_risk ==
        doctest::Approx(0.65));
  CHECK(property_profile(VectorClass::ServerlessTrigger).inherent_ephemeral_risk ==
        doctest::Approx(0.55));
  CHECK(property_profile(VectorClass::IamCanaryRole).iam_complexity ==
        doctest::Approx(0.70));
  for (VectorClass v : kAllVectors) {
    const PropertyProfile& p = property_profile(v);
    for (double field : {p.inherent_ephemeral_risk, p.stealth, p.iam_complexity,
                         p.multi_cloud_support, p.ttd_efficiency}) {
      CHECK(field >= 0.0);
      CHECK(field <= 1.0);
    }
  }
  // Radar ordering claims: K8s has the lowest multi-cloud support.
  for (VectorClass v : kAllVectors) {
    if (v == VectorClass::K8sSecret) continue;
    CHECK(property_profile(VectorClass::K8sSecret).multi_cloud_support <
          property_profile(v).multi_cloud_support);
  }
}

TEST_CASE("fleet generation is deterministic and format-valid") {
  const auto fleet = generate_fleet(42, payflow_context());
  CHECK(fleet.size() == 21);

  const auto again = generate_fleet(42, payflow_context());
  REQUIRE(again.size() == fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    CHECK(fleet[i].id == again[i].id);
    CHECK(fleet[i].artifact_descriptor == again[i].artifact_descriptor);
  }

  std::set<std::string> ids;
  for (const auto& b : fleet) {
    CHECK_FALSE(b.artifact_descriptor.empty());
    CHECK(is_applicable(b.vector, b.provider));
    CHECK(validate_descriptor(b.vector, b.provider, b.artifact_descriptor));
    CHECK(b.context_label == "payflow.io");
    ids.insert(b.id);
  }
  CHECK(ids.size() == 21);

  // A different seed changes descriptors but keeps the matrix coverage.
  const auto other = generate_fleet(43, payflow_context());
  bool any_difference = false;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    if (other[i].artifact_descriptor != fleet[i].artifact_descriptor) {
      any_difference = true;
    }
  }
  CHECK(any_difference);
}

TEST_CASE("signed-url descriptors always carry an expiry parameter") {
  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 1234ULL}) {
    for (const auto& b : generate_fleet(seed, payflow_context())) {
      if (b.vector != VectorClass::S3PresignedUrl) continue;
      const bool has_expiry =
          b.artifact_descriptor.find("X-Amz-Expires=") != std::string::npos ||
          b.artifact_descriptor.find("X-Goog-Expires=") != std::string::npos ||
          b.artifact_descriptor.find("se=") != std::string::npos;
      CHECK(has_expiry);
    }
  }
}

TEST_CASE("descriptor validator rejects malformed artifacts") {
  CHECK_FALSE(validate_descriptor(VectorClass::IamCanaryRole, CloudProvider::Aws,
                                  "arn:aws:iam::12345:role/short-account"));
  CHECK_FALSE(validate_descriptor(VectorClass::IamCanaryRole, CloudProvider::Aws, ""));
  CHECK(validate_descriptor(VectorClass::IamCanaryRole, CloudProvider::Aws,
                            "arn:aws:iam::123456789012:role/payments-audit-role"));
  // Right text, wrong provider pairing.
  CHECK_FALSE(validate_descriptor(VectorClass::K8sSecret, CloudProvider::Oci,
                                  "apiVersion: v1\nkind: Secret\n"));
  // Signed URL missing its expiry parameter.
  CHECK_FALSE(validate_descriptor(
      VectorClass::S3PresignedUrl, CloudProvider::Aws,
      "https://b.s3.us-east-1.amazonaws.com/k?X-Amz-Signature=abc"));
}

TEST_CASE("fleet JSONL round-trip") {
  const auto fleet = generate_fleet(7, payflow_context());
  const std::string jsonl = fleet_to_jsonl(fleet);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 21);
  const auto parsed = fleet_from_jsonl(jsonl);
  REQUIRE(parsed.size() == fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    CHECK(parsed[i].id == fleet[i].id);
    CHECK(parsed[i].vector == fleet[i].vector);
    CHECK(parsed[i].provider == fleet[i].provider);
    CHECK(parsed[i].artifact_descriptor == fleet[i].artifact_descriptor);
  }
}

TEST_CASE("incomplete context profile is a configuration error") {
  ContextProfile broken;
  broken.label = "empty";
  CHECK_THROWS_AS(generate_fleet(1, broken), ConfigError);
}
