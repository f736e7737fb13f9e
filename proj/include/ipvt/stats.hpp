#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ipvt {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double chi2, int dof);

// Kolmogorov distribution tail Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_sf(double lambda);

struct GofResult {
  double statistic = 0.0;  // chi2 or D
  double p_value = 1.0;
  int dof = 0;             // chi-square only
};

// Pearson chi-square of observed nonnegative-integer samples against
// Pois(mean). Tail bins are pooled until every expected count is at least
// min_expected.
GofResult chi_square_poisson_gof(const std::vector<long long>& samples,
                                 double mean, double min_expected = 5.0);

// One-sample Kolmogorov-Smirnov against a continuous CDF, with the
// finite-sample lambda correction.
GofResult ks_test(std::vector<double> samples,
                  const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov.
GofResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Mean, standard error of the mean.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  long long n = 0;
};
MeanSe mean_se(const std::vector<double>& values);

// One row of a multi-line harness report (one bin, one translation length, ...).
struct ReportRow {
  std::string label;
  double estimate = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = true;
  bool excluded = false;
};

// Outcome of a statistical harness: pure data, serialized as one JSON line.
struct TestReport {
  std::string harness;
  std::string params;
  std::string seed;
  double estimate = 0.0;
  double se = 0.0;
  double statistic = 0.0;
  double z = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
  long long n = 0;
  bool pass = false;
  std::string decision;  // "pass"/"fail" or a verdict string
  std::string note;
  std::vector<ReportRow> rows;

  std::string json_line() const;
};

}  // namespace ipvt
