#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cloudburst/attribution.hpp"
#include "cloudburst/calibrate.hpp"
#include "cloudburst/config.hpp"
#include "cloudburst/experiments.hpp"
#include "cloudburst/report.hpp"
#include "cloudburst/scanners.hpp"
#include "cloudburst/version.hpp"

namespace py = pybind11;
using namespace cloudburst;

namespace {

py::dict breakdown_to_dict(const CasBreakdown& b) {
  py::dict d;
  d["c_f"] = b.c_f;
  d["e_p"] = b.e_p;
  d["i_c"] = b.i_c;
  d["m_b"] = b.m_b;
  d["cas"] = b.cas;
  return d;
}

py::dict event_to_dict(const CallbackEvent& ev) {
  py::dict d;
  d["beacon_id"] = ev.beacon_id;
  d["vector"] = std::string(to_string(ev.vector));
  d["provider"] = std::string(to_string(ev.provider));
  d["level"] = std::string(to_string(ev.level));
  d["sdk"] = std::string(to_string(ev.sdk));
  d["event_time_h"] = ev.event_time_h;
  d["exposure_time_h"] = ev.exposure_time_h;
  d["tor"] = ev.routing.tor;
  d["vpn"] = ev.routing.vpn;
  d["residential"] = ev.routing.residential;
  d["rotated"] = ev.routing.rotated;
  d["actions"] = ev.iam.actions;
  d["principals"] = ev.iam.principals;
  d["cross_account"] = ev.iam.cross_account;
  d["churn_t"] = ev.churn.t;
  d["restarts"] = ev.churn.restarts;
  d["scale_events"] = ev.churn.scale_events;
  d["distinct_providers"] = ev.evidence.distinct_providers;
  d["cloud_exit"] = ev.evidence.cloud_exit;
  return d;
}

py::dict test_to_dict(const stats::TestResult& r) {
  py::dict d;
  d["test"] = r.test;
  d["statistic"] = r.statistic;
  d["p_value"] = r.p_value;
  d["significant"] = r.significant;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cloud-native beacon attribution simulation core";
  m.attr("__version__") = kVersion;

  // Scoring -----------------------------------------------------------
  m.def(
      "cas",
      [](double c_f, double e_p, double i_c, double m_b) {
        return cas(c_f, e_p, i_c, m_b);
      },
      py::arg("c_f"), py::arg("e_p"), py::arg("i_c"), py::arg("m_b"),
      "Composite attribution score under the default weights");
  m.def(
      "ephemeral_penalty",
      [](double t, int restarts, int scale_events, double delta) {
        return ephemeral_penalty({t, restarts, scale_events, delta});
      },
      py::arg("t"), py::arg("restarts") = 0, py::arg("scale_events") = 0,
      py::arg("delta") = 0.05);
  m.def(
      "iam_coverage",
      [](int actions, int principals, bool cross_account) {
        return iam_coverage({actions, principals, cross_account});
      },
      py::arg("actions"), py::arg("principals") = 1,
      py::arg("cross_account") = false);
  m.def(
      "callback_fidelity",
      [](bool tor, bool vpn, bool residential, bool rotated,
         const std::string& sdk, const std::string& vector) {
        RoutingEvidence routing;
        routing.tor = tor;
        routing.vpn = vpn;
        routing.residential = residential;
        routing.rotated = rotated;
        return callback_fidelity(routing, sdk_from_string(sdk),
                                 vector_from_string(vector));
      },
      py::arg("tor") = false, py::arg("vpn") = false,
      py::arg("residential") = false, py::arg("rotated") = false,
      py::arg("sdk") = "curl", py::arg("vector") = "s3_presigned_url");
  m.def(
      "multi_cloud_bonus",
      [](int distinct_providers, bool cloud_exit) {
        return multi_cloud_bonus({distinct_providers, cloud_exit});
      },
      py::arg("distinct_providers"), py::arg("cloud_exit") = false);

  // Taxonomy ----------------------------------------------------------
  m.def("applicability_matrix", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [v, p] : applicability_matrix()) {
      out.emplace_back(std::string(to_string(v)), std::string(to_string(p)));
    }
    return out;
  });
  m.def(
      "property_profile",
      [](const std::string& vector) {
        const PropertyProfile& p = property_profile(vector_from_string(vector));
        py::dict d;
        d["inherent_ephemeral_risk"] = p.inherent_ephemeral_risk;
        d["stealth"] = p.stealth;
        d["iam_complexity"] = p.iam_complexity;
        d["multi_cloud_support"] = p.multi_cloud_support;
        d["ttd_efficiency"] = p.ttd_efficiency;
        return d;
      },
      py::arg("vector"));
  m.def(
      "generate_fleet",
      [](std::uint64_t seed, const std::string& context) {
        const Config config = default_config();
        const auto fleet = generate_fleet(seed, config.context_profile(context));
        std::vector<py::dict> out;
        for (const auto& b : fleet) {
          py::dict d;
          d["id"] = b.id;
          d["vector"] = std::string(to_string(b.vector));
          d["provider"] = std::string(to_string(b.provider));
          d["artifact"] = b.artifact_descriptor;
          out.push_back(d);
        }
        return out;
      },
      py::arg("seed") = 42, py::arg("context") = "payflow.io");
  m.def(
      "validate_descriptor",
      [](const std::string& vector, const std::string& provider,
         const std::string& descriptor) {
        return validate_descriptor(vector_from_string(vector),
                                   provider_from_string(provider), descriptor);
      },
      py::arg("vector"), py::arg("provider"), py::arg("descriptor"));

  // Simulation --------------------------------------------------------
  m.def(
      "default_campaign",
      [](std::uint64_t seed) {
        const auto events = default_campaign(seed);
        std::vector<py::dict> out;
        out.reserve(events.size());
        for (const auto& ev : events) out.push_back(event_to_dict(ev));
        return out;
      },
      py::arg("seed") = 1);
  m.def(
      "score_campaign",
      [](std::uint64_t seed) {
        const auto events = default_campaign(seed);
        std::vector<py::dict> out;
        out.reserve(events.size());
        for (const auto& ev : events) {
          out.push_back(breakdown_to_dict(score_callback(ev)));
        }
        return out;
      },
      py::arg("seed") = 1);
  m.def(
      "scan_resistance",
      [](const std::string& vector, const std::string& sdk) {
        CallbackEvent ev;
        ev.beacon_id = "probe";
        ev.vector = vector_from_string(vector);
        ev.sdk = sdk_from_string(sdk);
        return scan(ev, default_scanners()).resistance;
      },
      py::arg("vector"), py::arg("sdk") = "scripted-sdk");

  // Statistics --------------------------------------------------------
  m.def("one_way_anova", [](const std::vector<std::vector<double>>& groups) {
    return test_to_dict(stats::one_way_anova(groups));
  });
  m.def("kruskal_wallis", [](const std::vector<std::vector<double>>& groups) {
    return test_to_dict(stats::kruskal_wallis(groups));
  });
  m.def("two_sample_t",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return test_to_dict(stats::two_sample_t(a, b));
        });

  // Studies -----------------------------------------------------------
  m.def(
      "run_grid",
      [](std::uint64_t seed, int replicas, int jobs) {
        Config config = default_config();
        config.experiment.master_seed = seed;
        if (replicas > 0) config.experiment.replicas = replicas;
        const GridReport report = run_grid(config, jobs);
        py::dict d;
        py::dict vectors;
        for (const auto& row : report.per_vector) {
          py::dict v;
          v["cas_mean"] = row.cas_mean;
          v["dr_mean"] = row.dr_mean;
          v["ctd_mean"] = row.ctd_mean;
          v["posterior_mean"] = row.posterior_mean;
          v["n_callbacks"] = row.n_callbacks;
          vectors[std::string(to_string(row.vector)).c_str()] = v;
        }
        d["per_vector"] = vectors;
        d["overall_cas"] = report.overall_cas;
        d["overall_dr"] = report.overall_dr;
        d["campaign_callbacks"] = report.campaign_callbacks;
        d["anova_cas"] = test_to_dict(report.anova_cas);
        d["anova_posterior"] = test_to_dict(report.anova_posterior);
        d["anova_ctd"] = test_to_dict(report.anova_ctd);
        return d;
      },
      py::arg("seed") = 42, py::arg("replicas") = 0, py::arg("jobs") = 1);
  m.def(
      "run_decay",
      [](std::uint64_t seed, int replicas, int jobs) {
        Config config = default_config();
        config.experiment.master_seed = seed;
        if (replicas > 0) config.experiment.replicas = replicas;
        const DecayReport report = run_decay(config, jobs);
        std::vector<py::dict> rows;
        for (const auto& row : report.rows) {
          py::dict r;
          r["vector"] = std::string(to_string(row.vector));
          r["t_h"] = row.t;
          r["cas_mean"] = row.cas_mean;
          r["cas_sd"] = row.cas_sd;
          r["ep_mean"] = row.ep_mean;
          rows.push_back(r);
        }
        return rows;
      },
      py::arg("seed") = 42, py::arg("replicas") = 0, py::arg("jobs") = 1);
}
