#include "cloudburst/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cloudburst {

namespace {

void check_fraction(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void CasWeights::validate() const {
  for (double w : {fidelity, iam, iam_survival, multi_cloud}) {
    check_fraction(w, "cas weight");
  }
  const double sum = fidelity + iam + iam_survival + multi_cloud;
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::domain_error("cas weights must sum to 1");
  }
}

double cas(double c_f, double e_p, double i_c, double m_b,
           const CasWeights& w) {
  w.validate();
  check_fraction(c_f, "c_f");
  check_fraction(e_p, "e_p");
  check_fraction(i_c, "i_c");
  check_fraction(m_b, "m_b");
  const double survival = 1.0 - e_p;
  return w.fidelity * c_f * survival + w.iam * i_c +
         w.iam_survival * survival * i_c + w.multi_cloud * m_b;
}

double ephemeral_penalty(const ChurnState& churn) {
  if (churn.t < 0.0 || churn.restarts < 0 || churn.scale_events < 0) {
    throw std::domain_error("churn state fields must be non-negative");
  }
  if (churn.delta <= 0.0) {
    throw std::domain_error("decay rate delta must be positive");
  }
  const double exponent =
      churn.delta * (churn.t + 2.0 * churn.restarts + 3.0 * churn.scale_events);
  return 1.0 - std::exp(-exponent);
}

double iam_coverage(const IamTelemetry& t) {
  if (t.actions < 0) {
    throw std::domain_error("action count must be non-negative");
  }
  if (t.actions > 0 && t.principals < 1) {
    throw std::domain_error("principal count must be >= 1 when actions > 0");
  }
  double coverage = std::min(t.actions / 10.0, 0.80);
  if (t.principals > 1) coverage += 0.10;
  if (t.cross_account) coverage += 0.10;
  return coverage;
}

double callback_fidelity(const RoutingEvidence& routing, SdkClass sdk,
                         VectorClass vector, const FidelityParams& p) {
  double value = p.base[index_of(vector)] + p.sdk_shift[index_of(sdk)];
  if (routing.tor) value -= p.tor_penalty;
  if (routing.vpn) value -= p.vpn_penalty;
  if (routing.residential) value -= p.residential_penalty;
  if (routing.rotated) value -= p.rotation_penalty;
  return std::clamp(value, p.floor, 1.0);
}

double multi_cloud_bonus(const CrossProviderEvidence& evidence,
                         const MultiCloudParams& p) {
  if (evidence.distinct_providers < 1) {
    throw std::domain_error("distinct_providers must be >= 1");
  }
  const double value = p.per_provider * (evidence.distinct_providers - 1) +
                       (evidence.cloud_exit ? p.cloud_exit : 0.0);
  return clamp01(value);
}

CasBreakdown make_breakdown(double c_f, double e_p, double i_c, double m_b,
                            const CasWeights& weights) {
  CasBreakdown b;
  b.c_f = clamp01(c_f);
  b.e_p = clamp01(e_p);
  b.i_c = clamp01(i_c);
  b.m_b = clamp01(m_b);
  b.cas = cas(b.c_f, b.e_p, b.i_c, b.m_b, weights);
  return b;
}

}  // namespace cloudburst
