#include "cloudburst/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cloudburst::stats {

namespace {

constexpr double kEps = 1e-14;
constexpr int kMaxIter = 500;

// Lentz's continued fraction for the incomplete beta.
double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < 1e-300) d = 1e-300;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = 1.0 + aa / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = 1.0 + aa / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Series form of the regularised lower gamma P(a, x).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction form of the regularised upper gamma Q(a, x).
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

GroupSummary summarize(const std::string& label, const std::vector<double>& g) {
  GroupSummary s;
  s.label = label;
  s.n = g.size();
  s.mean = mean(g);
  s.sd = g.size() > 1 ? sample_sd(g) : 0.0;
  return s;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_cf(a, b, x) / a;
  }
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double regularized_gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) {
    throw std::invalid_argument("regularized_gamma_q: invalid arguments");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double f_upper_tail(double f, double df1, double df2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const double x = df2 / (df2 + df1 * f);
  return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x);
}

double chi_squared_upper_tail(double x, double df) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, x / 2.0);
}

double t_two_sided(double t, double df) {
  const double t2 = t * t;
  if (std::isinf(t2)) return 0.0;
  const double x = df / (df + t2);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("sd needs >= 2 samples");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

TestResult one_way_anova(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw std::invalid_argument("one_way_anova: need >= 2 groups");
  }
  std::size_t n_total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw std::invalid_argument("one_way_anova: each group needs >= 2");
    }
    n_total += g.size();
    grand_sum = std::accumulate(g.begin(), g.end(), grand_sum);
  }
  const double grand_mean = grand_sum / static_cast<double>(n_total);

  double ss_between = 0.0;
  double ss_within = 0.0;
  for (const auto& g : groups) {
    const double gm = mean(g);
    ss_between += static_cast<double>(g.size()) * (gm - grand_mean) * (gm - grand_mean);
    for (double x : g) ss_within += (x - gm) * (x - gm);
  }
  const double df1 = static_cast<double>(groups.size() - 1);
  const double df2 = static_cast<double>(n_total - groups.size());

  TestResult r;
  r.test = "anova";
  r.df1 = df1;
  r.df2 = df2;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    r.groups.push_back(summarize("group" + std::to_string(i), groups[i]));
  }

  const double ms_within = ss_within / df2;
  const double ms_between = ss_between / df1;
  const double scale = std::max(std::fabs(grand_mean), 1.0);
  if (ms_within <= 1e-300 * scale * scale) {
    if (ms_between <= 1e-300 * scale * scale) {
      // all values identical everywhere: no evidence of any effect
      r.statistic = 0.0;
      r.p_value = 1.0;
      r.significant = false;
      return r;
    }
    throw std::domain_error("one_way_anova: degenerate within-group variance");
  }
  r.statistic = ms_between / ms_within;
  r.p_value = f_upper_tail(r.statistic, df1, df2);
  r.significant = r.p_value < 0.05;
  return r;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw std::invalid_argument("kruskal_wallis: need >= 2 groups");
  }
  struct Tagged {
    double value;
    std::size_t group;
  };
  std::vector<Tagged> pooled;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].empty()) {
      throw std::invalid_argument("kruskal_wallis: empty group");
    }
    for (double v : groups[gi]) pooled.push_back({v, gi});
  }
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const Tagged& a, const Tagged& b) { return a.value < b.value; });

  const std::size_t n = pooled.size();
  std::vector<double> rank_sum(groups.size(), 0.0);
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[j + 1].value == pooled[i].value) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j + 1);
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    for (std::size_t m = i; m <= j; ++m) rank_sum[pooled[m].group] += midrank;
    i = j + 1;
  }

  const double nd = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    h += rank_sum[gi] * rank_sum[gi] / static_cast<double>(groups[gi].size());
  }
  h = 12.0 / (nd * (nd + 1.0)) * h - 3.0 * (nd + 1.0);

  TestResult r;
  r.test = "kruskal_wallis";
  r.df1 = static_cast<double>(groups.size() - 1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    r.groups.push_back(summarize("group" + std::to_string(gi), groups[gi]));
  }

  const double correction = 1.0 - tie_term / (nd * nd * nd - nd);
  if (correction <= 0.0) {
    // every pooled value identical
    r.statistic = 0.0;
    r.p_value = 1.0;
    r.significant = false;
    return r;
  }
  h /= correction;
  if (h < 0.0 && h > -1e-12) h = 0.0;
  r.statistic = h;
  r.p_value = chi_squared_upper_tail(h, r.df1);
  r.significant = r.p_value < 0.05;
  return r;
}

TestResult two_sample_t(const std::vector<double>& a,
                        const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("two_sample_t: each sample needs >= 2");
  }
  const double ma = mean(a);
  const double mb = mean(b);
  double va = 0.0;
  double vb = 0.0;
  for (double x : a) va += (x - ma) * (x - ma);
  for (double x : b) vb += (x - mb) * (x - mb);
  va /= static_cast<double>(a.size() - 1);
  vb /= static_cast<double>(b.size() - 1);

  TestResult r;
  r.test = "welch_t";
  r.groups.push_back(summarize("a", a));
  r.groups.push_back(summarize("b", b));

  const double sa = va / static_cast<double>(a.size());
  const double sb = vb / static_cast<double>(b.size());
  const double se2 = sa + sb;
  if (se2 <= 0.0) {
    if (ma == mb) {
      r.statistic = 0.0;
      r.p_value = 1.0;
      r.df1 = static_cast<double>(a.size() + b.size() - 2);
      return r;
    }
    throw std::domain_error("two_sample_t: zero variance in both samples");
  }
  r.statistic = (ma - mb) / std::sqrt(se2);
  r.df1 = se2 * se2 /
          (sa * sa / static_cast<double>(a.size() - 1) +
           sb * sb / static_cast<double>(b.size() - 1));
  r.p_value = t_two_sided(r.statistic, r.df1);
  r.significant = r.p_value < 0.05;
  return r;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("pearson: need >= 3 pairs");
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    throw std::domain_error("pearson: zero variance series");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace cloudburst::stats
