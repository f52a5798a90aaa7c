#ifndef CLOUDBURST_STATS_HPP
#define CLOUDBURST_STATS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace cloudburst::stats {

/// Per-group summary carried alongside every test result so reports can
/// audit exactly what went into the statistic.
struct GroupSummary {
  std::string label;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
};

struct TestResult {
  std::string test;       // "anova", "kruskal_wallis", "welch_t"
  double statistic = 0.0;  // F, H, or t
  double p_value = 1.0;
  double df1 = 0.0;  // between df / chi-squared df / Welch df
  double df2 = 0.0;  // within df; unused for H and t
  bool significant = false;  // at alpha = 0.05
  std::vector<GroupSummary> groups;
};

// Distribution tails. Implemented in-repo (regularised incomplete beta via
// Lentz continued fraction, regularised gamma via series + continued
// fraction) so results are bit-reproducible across environments.
double regularized_incomplete_beta(double a, double b, double x);
double regularized_gamma_q(double a, double x);
double f_upper_tail(double f, double df1, double df2);
double chi_squared_upper_tail(double x, double df);
double t_two_sided(double t, double df);

/// One-way fixed-effects ANOVA. Requires >= 2 groups of >= 2 samples.
/// Throws std::invalid_argument on shape violations and std::domain_error
/// when the within-group variance is degenerate while means differ is fine;
/// all-identical data yields F = 0, p = 1.
TestResult one_way_anova(const std::vector<std::vector<double>>& groups);

/// Kruskal-Wallis H on midranks with tie correction. All-identical data is
/// H = 0, p = 1, not an error.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// Welch's unequal-variance t test with Welch-Satterthwaite df, two-sided.
TestResult two_sample_t(const std::vector<double>& a,
                        const std::vector<double>& b);

double mean(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);
double median(std::vector<double> xs);

/// Pearson correlation; throws std::invalid_argument for < 3 pairs and
/// std::domain_error when either series has zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace cloudburst::stats

#endif  // CLOUDBURST_STATS_HPP
