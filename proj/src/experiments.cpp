#include "cloudburst/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cloudburst/attribution.hpp"
#include "cloudburst/digest.hpp"
#include "cloudburst/rng.hpp"
#include "cloudburst/scanners.hpp"

namespace cloudburst {

namespace {

// Study identifiers folded into child seeds so the four studies never
// share random streams.
constexpr std::uint64_t kGridStudy = 1;
constexpr std::uint64_t kCtdStudy = 2;
constexpr std::uint64_t kDecayStudy = 3;

AttributionParams attribution_params(const Config& config) {
  AttributionParams p = config.attribution;
  p.threshold = config.experiment.threshold;
  return p;
}

/// Scored events of one campaign replica, grouped per (beacon, level).
struct ReplicaResult {
  struct Trace {
    std::string beacon_id;
    VectorClass vector{};
    CloudProvider provider{};
    AttackerLevel level{};
    std::vector<CallbackEvent> events;
    std::vector<CasBreakdown> scores;
    std::vector<double> dr;
    double final_posterior = 0.0;
    std::optional<int> ctd;
  };
  std::vector<Trace> traces;  // fixed (level, beacon) order
};

ReplicaResult run_replica(const Config& config,
                          const std::vector<BeaconInstance>& fleet,
                          std::uint64_t master_seed, int replica) {
  const AttributionParams attr = attribution_params(config);
  ReplicaResult result;
  for (AttackerLevel level : kAllLevels) {
    const AttackerProfile& profile = config.attackers[index_of(level)];
    const std::uint64_t run_seed = derive_seed(
        master_seed, {kGridStudy, static_cast<std::uint64_t>(index_of(level)),
                      static_cast<std::uint64_t>(replica)});
    const auto events = simulate_callbacks(fleet, profile,
                                           config.experiment.horizon_h,
                                           run_seed, config.simulation);
    for (const auto& beacon : fleet) {
      ReplicaResult::Trace trace;
      trace.beacon_id = beacon.id;
      trace.vector = beacon.vector;
      trace.provider = beacon.provider;
      trace.level = level;
      for (const auto& ev : events) {
        if (ev.beacon_id != beacon.id) continue;
        trace.events.push_back(ev);
        trace.scores.push_back(score_callback(ev, config.weights,
                                              config.fidelity,
                                              config.multicloud));
        trace.dr.push_back(scan(ev, config.scanners).resistance);
      }
      if (!trace.events.empty()) {
        const auto attribution_trace =
            run_trace(trace.events, trace.scores, attr);
        trace.final_posterior = attribution_trace.posterior_series.back();
      }
      trace.ctd = measure_ctd(
          beacon, profile,
          derive_seed(master_seed,
                      {kCtdStudy, static_cast<std::uint64_t>(index_of(level)),
                       static_cast<std::uint64_t>(replica), fnv1a64(beacon.id)}),
          config.experiment.threshold, attr, config.simulation, config.weights,
          config.fidelity, config.multicloud);
      result.traces.push_back(std::move(trace));
    }
  }
  return result;
}

double safe_mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : stats::mean(v);
}

/// Cells below the minimum sample size are excluded from tests rather than
/// silently contributing zeros; an uncomputable test is labelled as such.
stats::TestResult guarded_anova(const std::vector<std::vector<double>>& groups) {
  try {
    return stats::one_way_anova(groups);
  } catch (const std::exception&) {
    stats::TestResult r;
    r.test = "anova (insufficient data)";
    r.statistic = 0.0;
    r.p_value = 1.0;
    for (const auto& g : groups) {
      stats::GroupSummary s;
      s.n = g.size();
      s.mean = g.empty() ? 0.0 : stats::mean(g);
      r.groups.push_back(s);
    }
    return r;
  }
}

stats::TestResult guarded_welch(const std::vector<double>& a,
                                const std::vector<double>& b) {
  try {
    return stats::two_sample_t(a, b);
  } catch (const std::exception&) {
    stats::TestResult r;
    r.test = "welch_t (insufficient data)";
    r.statistic = 0.0;
    r.p_value = 1.0;
    stats::GroupSummary sa, sb;
    sa.n = a.size();
    sa.mean = a.empty() ? 0.0 : stats::mean(a);
    sb.n = b.size();
    sb.mean = b.empty() ? 0.0 : stats::mean(b);
    r.groups = {sa, sb};
    return r;
  }
}

}  // namespace

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& task) {
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const std::size_t worker_count =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  workers.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        task(i);
      }
    });
  }
  for (auto& t : workers) t.join();
}

Aggregate aggregate_of(const std::vector<double>& values) {
  Aggregate a;
  a.n = values.size();
  if (values.empty()) return a;
  a.mean = stats::mean(values);
  a.sd = values.size() > 1 ? stats::sample_sd(values) : 0.0;
  return a;
}

GridReport run_grid(const Config& config, int jobs) {
  config.validate();
  const auto& exp = config.experiment;
  const auto fleet =
      generate_fleet(exp.master_seed, config.context_profile(exp.context));

  std::vector<ReplicaResult> replicas(static_cast<std::size_t>(exp.replicas));
  parallel_for(replicas.size(), jobs, [&](std::size_t i) {
    replicas[i] = run_replica(config, fleet, exp.master_seed, static_cast<int>(i));
  });

  GridReport report;
  report.master_seed = exp.master_seed;
  report.config_digest = config_digest(config);
  report.replicas = exp.replicas;

  // Cell and vector aggregates over every replica.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> cell_cas,
      cell_dr, cell_ctd, cell_posterior;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_not_reached;
  for (const auto& replica : replicas) {
    for (const auto& trace : replica.traces) {
      const auto key = std::make_pair(index_of(trace.vector), index_of(trace.level));
      for (const auto& score : trace.scores) cell_cas[key].push_back(score.cas);
      for (double dr : trace.dr) cell_dr[key].push_back(dr);
      if (!trace.events.empty()) {
        cell_posterior[key].push_back(trace.final_posterior);
      }
      if (trace.ctd) {
        cell_ctd[key].push_back(static_cast<double>(*trace.ctd));
      } else {
        ++cell_not_reached[key];
      }
    }
  }

  for (VectorClass v : kAllVectors) {
    for (AttackerLevel l : kAllLevels) {
      const auto key = std::make_pair(index_of(v), index_of(l));
      GridCell cell;
      cell.vector = v;
      cell.level = l;
      cell.n_callbacks = cell_cas[key].size();
      cell.cas = aggregate_of(cell_cas[key]);
      cell.dr = aggregate_of(cell_dr[key]);
      cell.ctd = aggregate_of(cell_ctd[key]);
      cell.ctd_median = cell_ctd[key].empty() ? 0.0 : stats::median(cell_ctd[key]);
      cell.ctd_not_reached = cell_not_reached[key];
      cell.posterior = aggregate_of(cell_posterior[key]);
      cell.insufficient = cell.n_callbacks < 3;
      report.cells.push_back(cell);
    }
  }

  std::vector<double> all_cas;
  std::vector<double> all_dr;
  for (VectorClass v : kAllVectors) {
    std::vector<double> vec_cas, vec_dr, vec_ctd, vec_post;
    for (AttackerLevel l : kAllLevels) {
      const auto key = std::make_pair(index_of(v), index_of(l));
      vec_cas.insert(vec_cas.end(), cell_cas[key].begin(), cell_cas[key].end());
      vec_dr.insert(vec_dr.end(), cell_dr[key].begin(), cell_dr[key].end());
      vec_ctd.insert(vec_ctd.end(), cell_ctd[key].begin(), cell_ctd[key].end());
      vec_post.insert(vec_post.end(), cell_posterior[key].begin(),
                      cell_posterior[key].end());
    }
    VectorRow row;
    row.vector = v;
    row.n_callbacks = vec_cas.size();
    const Aggregate cas_agg = aggregate_of(vec_cas);
    const Aggregate dr_agg = aggregate_of(vec_dr);
    row.cas_mean = cas_agg.mean;
    row.cas_sd = cas_agg.sd;
    row.dr_mean = dr_agg.mean;
    row.dr_sd = dr_agg.sd;
    row.ctd_mean = safe_mean(vec_ctd);
    row.ctd_median = vec_ctd.empty() ? 0.0 : stats::median(vec_ctd);
    row.posterior_mean = safe_mean(vec_post);
    const PropertyProfile& props = config.properties[index_of(v)];
    row.inherent_ephemeral_risk = props.inherent_ephemeral_risk;
    row.stealth = props.stealth;
    row.multi_cloud_support = props.multi_cloud_support;
    row.ttd_efficiency = props.ttd_efficiency;
    report.per_vector.push_back(row);
    all_cas.insert(all_cas.end(), vec_cas.begin(), vec_cas.end());
    all_dr.insert(all_dr.end(), vec_dr.begin(), vec_dr.end());
  }
  report.overall_cas = safe_mean(all_cas);
  report.overall_dr = safe_mean(all_dr);

  // Attacker-level effect tests on the master campaign (replica 0),
  // matching the campaign scale the aggregate tables describe.
  const ReplicaResult& campaign = replicas.front();
  std::vector<std::vector<double>> cas_by_level(kLevelCount);
  std::vector<std::vector<double>> posterior_by_level(kLevelCount);
  std::vector<std::vector<double>> ctd_by_level(kLevelCount);
  std::size_t campaign_callbacks = 0;
  for (const auto& trace : campaign.traces) {
    const std::size_t li = index_of(trace.level);
    campaign_callbacks += trace.events.size();
    for (const auto& score : trace.scores) {
      cas_by_level[li].push_back(score.cas);
    }
    if (!trace.events.empty()) {
      posterior_by_level[li].push_back(trace.final_posterior);
    }
    if (trace.ctd) ctd_by_level[li].push_back(static_cast<double>(*trace.ctd));
  }
  report.campaign_callbacks = campaign_callbacks;
  report.anova_cas = guarded_anova(cas_by_level);
  report.anova_posterior = guarded_anova(posterior_by_level);
  report.anova_ctd = guarded_anova(ctd_by_level);
  const std::array<const char*, kLevelCount> level_names = {"naive", "advanced", "apt"};
  for (std::size_t li = 0; li < kLevelCount; ++li) {
    report.anova_cas.groups[li].label = level_names[li];
    report.anova_posterior.groups[li].label = level_names[li];
    report.anova_ctd.groups[li].label = level_names[li];
  }
  return report;
}

DecayReport run_decay(const Config& config, int jobs) {
  config.validate();
  const auto& exp = config.experiment;
  DecayReport report;
  report.master_seed = exp.master_seed;
  report.config_digest = config_digest(config);
  report.replicas = exp.replicas;

  struct Task {
    VectorClass vector;
    std::size_t t_index;
  };
  std::vector<Task> tasks;
  for (VectorClass v : kAllVectors) {
    for (std::size_t ti = 0; ti < exp.decay_timepoints.size(); ++ti) {
      tasks.push_back({v, ti});
    }
  }

  struct TaskResult {
    std::vector<double> cas;
    std::vector<double> ep;
  };
  std::vector<TaskResult> results(tasks.size());

  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const double t = exp.decay_timepoints[task.t_index];
    const DecayPrior& prior = exp.decay_priors[index_of(task.vector)];
    const double risk =
        property_profile(task.vector).inherent_ephemeral_risk;
    const double restart_rate = config.simulation.churn_restart_factor * risk;
    const double scale_rate = config.simulation.churn_scale_factor * risk;
    TaskResult& out = results[i];
    out.cas.reserve(static_cast<std::size_t>(exp.replicas));
    for (int rep = 0; rep < exp.replicas; ++rep) {
      Rng rng(derive_seed(exp.master_seed,
                          {kDecayStudy,
                           static_cast<std::uint64_t>(index_of(task.vector)),
                           static_cast<std::uint64_t>(task.t_index),
                           static_cast<std::uint64_t>(rep)}));
      ChurnState churn;
      churn.t = t;
      churn.restarts = rng.poisson(restart_rate * t);
      churn.scale_events = rng.poisson(scale_rate * t);
      churn.delta = config.delta;
      const double ep = ephemeral_penalty(churn);
      const double c_f = rng.normal(prior.c_f_mean, prior.c_f_sd);
      const double i_c0 = rng.normal(prior.i_c_mean, prior.i_c_sd);
      const double m_b = rng.normal(prior.m_b_mean, prior.m_b_sd);
      // Churn erodes the usable identity context: the principal that fired
      // the beacon may no longer exist by analysis time.
      const double i_c = i_c0 * (1.0 - exp.kappa * ep);
      const CasBreakdown b = make_breakdown(c_f, ep, i_c, m_b, config.weights);
      out.cas.push_back(b.cas);
      out.ep.push_back(ep);
    }
  });

  std::array<std::vector<double>, kVectorCount> first_samples, last_samples;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    DecayRow row;
    row.vector = task.vector;
    row.t = exp.decay_timepoints[task.t_index];
    const Aggregate agg = aggregate_of(results[i].cas);
    row.n = agg.n;
    row.cas_mean = agg.mean;
    row.cas_sd = agg.sd;
    row.ep_mean = safe_mean(results[i].ep);
    report.rows.push_back(row);
    if (task.t_index == 0) first_samples[index_of(task.vector)] = results[i].cas;
    if (task.t_index == exp.decay_timepoints.size() - 1) {
      last_samples[index_of(task.vector)] = results[i].cas;
    }
  }

  for (VectorClass v : kAllVectors) {
    auto contrast = guarded_welch(first_samples[index_of(v)],
                                  last_samples[index_of(v)]);
    contrast.groups[0].label = "t0";
    contrast.groups[1].label = "t_end";
    report.cas_first[index_of(v)] = contrast.groups[0].mean;
    report.cas_last[index_of(v)] = contrast.groups[1].mean;
    report.contrasts.push_back(std::move(contrast));
  }
  return report;
}

ProviderReport run_provider_analysis(const Config& config, int jobs) {
  config.validate();
  const auto& exp = config.experiment;
  const auto fleet =
      generate_fleet(exp.master_seed, config.context_profile(exp.context));

  std::vector<ReplicaResult> replicas(static_cast<std::size_t>(exp.replicas));
  parallel_for(replicas.size(), jobs, [&](std::size_t i) {
    replicas[i] = run_replica(config, fleet, exp.master_seed, static_cast<int>(i));
  });

  ProviderReport report;
  report.master_seed = exp.master_seed;
  report.config_digest = config_digest(config);
  report.replicas = exp.replicas;

  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> cell_cas;
  std::array<std::vector<double>, kProviderCount> provider_cas;
  for (const auto& replica : replicas) {
    for (const auto& trace : replica.traces) {
      const auto key =
          std::make_pair(index_of(trace.vector), index_of(trace.provider));
      for (const auto& score : trace.scores) {
        cell_cas[key].push_back(score.cas);
        provider_cas[index_of(trace.provider)].push_back(score.cas);
      }
    }
  }

  // Provider columns of per-cell means; distinct sample sets per provider
  // because the applicability matrix is asymmetric.
  std::vector<std::vector<double>> columns(kProviderCount);
  for (const auto& [vector, provider] : applicability_matrix()) {
    const auto key = std::make_pair(index_of(vector), index_of(provider));
    ProviderCell cell;
    cell.vector = vector;
    cell.provider = provider;
    const Aggregate agg = aggregate_of(cell_cas[key]);
    cell.n_callbacks = agg.n;
    cell.cas_mean = agg.mean;
    cell.cas_sd = agg.sd;
    report.cells.push_back(cell);
    columns[index_of(provider)].push_back(agg.mean);
  }

  for (CloudProvider p : kAllProviders) {
    stats::GroupSummary s;
    s.label = std::string(to_string(p));
    const Aggregate agg = aggregate_of(provider_cas[index_of(p)]);
    s.n = agg.n;
    s.mean = agg.mean;
    s.sd = agg.sd;
    report.provider_distributions.push_back(s);
  }

  report.kruskal = stats::kruskal_wallis(columns);
  for (std::size_t pi = 0; pi < kProviderCount; ++pi) {
    report.kruskal.groups[pi].label = std::string(to_string(kAllProviders[pi]));
  }
  return report;
}

ScatterReport run_scatter_study(const Config& config, int jobs) {
  config.validate();
  const auto& exp = config.experiment;
  const auto fleet =
      generate_fleet(exp.master_seed, config.context_profile(exp.context));

  std::vector<ReplicaResult> replicas(static_cast<std::size_t>(exp.replicas));
  parallel_for(replicas.size(), jobs, [&](std::size_t i) {
    replicas[i] = run_replica(config, fleet, exp.master_seed, static_cast<int>(i));
  });

  ScatterReport report;
  report.master_seed = exp.master_seed;
  report.config_digest = config_digest(config);
  report.replicas = exp.replicas;

  std::vector<double> xs, ys;
  for (std::size_t rep = 0; rep < replicas.size(); ++rep) {
    for (const auto& trace : replicas[rep].traces) {
      if (trace.events.empty()) continue;
      ScatterPoint point;
      point.beacon_id = trace.beacon_id;
      point.vector = trace.vector;
      point.provider = trace.provider;
      point.level = trace.level;
      point.replica = static_cast<int>(rep);
      point.n_callbacks = trace.events.size();
      std::vector<double> cas_values;
      cas_values.reserve(trace.scores.size());
      for (const auto& s : trace.scores) cas_values.push_back(s.cas);
      point.mean_cas = stats::mean(cas_values);
      point.final_posterior = trace.final_posterior;
      xs.push_back(point.mean_cas);
      ys.push_back(point.final_posterior);
      if (point.mean_cas >= 0.70 && point.final_posterior >= 0.85) {
        ++report.ideal_zone_count;
      }
      report.max_posterior = std::max(report.max_posterior, point.final_posterior);
      report.points.push_back(std::move(point));
    }
  }
  report.pearson_r = cas_posterior_correlation(xs, ys);
  return report;
}

std::map<VectorClass, Tier> recommend_tiers(const GridReport& report) {
  if (report.per_vector.size() != kVectorCount) {
    throw std::invalid_argument("recommend_tiers: report is missing vector rows");
  }

  // Rank by CAS then DR, descending; declaration order breaks exact ties.
  auto rank_of = [&](auto field) {
    std::array<std::size_t, kVectorCount> rank{};
    std::vector<std::size_t> order(kVectorCount);
    for (std::size_t i = 0; i < kVectorCount; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return field(report.per_vector[a]) > field(report.per_vector[b]);
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
    return rank;
  };
  const auto cas_rank = rank_of([](const VectorRow& r) { return r.cas_mean; });
  const auto dr_rank = rank_of([](const VectorRow& r) { return r.dr_mean; });

  std::vector<std::size_t> tier1_candidates;
  for (std::size_t i = 0; i < kVectorCount; ++i) {
    if (report.per_vector[i].inherent_ephemeral_risk <= 0.10) {
      tier1_candidates.push_back(i);
    }
  }
  std::stable_sort(tier1_candidates.begin(), tier1_candidates.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (cas_rank[a] != cas_rank[b]) return cas_rank[a] < cas_rank[b];
                     return dr_rank[a] < dr_rank[b];
                   });
  if (tier1_candidates.size() > 2) tier1_candidates.resize(2);

  std::map<VectorClass, Tier> tiers;
  for (std::size_t i = 0; i < kVectorCount; ++i) {
    const VectorRow& row = report.per_vector[i];
    const bool tier1 =
        std::find(tier1_candidates.begin(), tier1_candidates.end(), i) !=
        tier1_candidates.end();
    if (tier1) {
      tiers[row.vector] = Tier::DeployUniversally;
    } else if (row.inherent_ephemeral_risk >= 0.50) {
      tiers[row.vector] = Tier::DeployWithRuntimeMonitoring;
    } else {
      tiers[row.vector] = Tier::DeployWithCachingAwareness;
    }
  }
  return tiers;
}

}  // namespace cloudburst
