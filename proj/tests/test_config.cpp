#include <cstdio>
#include <fstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "cloudburst/config.hpp"

using namespace cloudburst;
using json = nlohmann::ordered_json;

TEST_CASE("default config validates and round-trips through JSON") {
  const Config config = default_config();
  CHECK_NOTHROW(config.validate());

  const std::string text = config_to_json_text(config);
  const Config parsed = config_from_json_text(text);
  CHECK(config_to_json_text(parsed) == text);
  CHECK(config_digest(parsed) == config_digest(config));
}

TEST_CASE("unknown keys are hard errors with a path diagnostic") {
  json doc = json::parse(config_to_json_text(default_config()));
  doc["scoring"]["typo_key"] = 1.0;
  try {
    config_from_json_text(doc.dump());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string message = e.what();
    CHECK(message.find("typo_key") != std::string::npos);
    CHECK(message.find("$.scoring") != std::string::npos);
  }

  json top = json::parse(config_to_json_text(default_config()));
  top["surprise"] = {};
  CHECK_THROWS_AS(config_from_json_text(top.dump()), ConfigError);
}

TEST_CASE("missing keys are reported") {
  json doc = json::parse(config_to_json_text(default_config()));
  doc["scoring"].erase("delta");
  CHECK_THROWS_AS(config_from_json_text(doc.dump()), ConfigError);
}

TEST_CASE("semantic validation failures reject the config") {
  json doc = json::parse(config_to_json_text(default_config()));
  doc["scoring"]["weights"]["w1"] = 0.9;  // weights no longer sum to 1
  CHECK_THROWS_AS(config_from_json_text(doc.dump()), ConfigError);

  doc = json::parse(config_to_json_text(default_config()));
  doc["experiment"]["decay_timepoints"] = {6.0, 0.0, 48.0};
  CHECK_THROWS_AS(config_from_json_text(doc.dump()), ConfigError);

  doc = json::parse(config_to_json_text(default_config()));
  doc["attackers"]["apt"]["tor"] = 1.4;
  CHECK_THROWS_AS(config_from_json_text(doc.dump()), ConfigError);

  doc = json::parse(config_to_json_text(default_config()));
  doc["simulation"]["telemetry_overrides"]["nonsense_key"] = {
      {"actions_min", 1}, {"actions_max", 2}, {"multi_principal_p", 0.1},
      {"cross_account_p", 0.1}};
  CHECK_THROWS_AS(config_from_json_text(doc.dump()), ConfigError);
}

TEST_CASE("unknown context profile lookups fail loudly") {
  const Config config = default_config();
  CHECK_NOTHROW(config.context_profile("payflow.io"));
  CHECK_THROWS_AS(config.context_profile("acme.example"), ConfigError);
}

TEST_CASE("config file I/O") {
  const Config config = default_config();
  const std::string path = "test_config_roundtrip.json";
  save_config(config, path);
  const Config loaded = load_config(path);
  CHECK(config_digest(loaded) == config_digest(config));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("does-not-exist.json"), ConfigError);
}

TEST_CASE("committed data config matches the compiled-in defaults") {
  const std::string path =
      std::string(CLOUDBURST_SOURCE_DIR) + "/data/cloudburst.json";
  std::ifstream probe(path);
  REQUIRE_MESSAGE(probe.good(), "data/cloudburst.json must be committed");
  const Config loaded = load_config(path);
  CHECK(config_digest(loaded) == config_digest(default_config()));
}
