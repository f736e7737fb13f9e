#include "ipvt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace ipvt {

namespace {

// Series expansion of P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) (modified Lentz), valid for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("regularized_gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double chi2, int dof) {
  if (dof <= 0) throw std::domain_error("chi_square_sf: dof must be positive");
  return regularized_gamma_q(0.5 * dof, 0.5 * chi2);
}

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

GofResult chi_square_poisson_gof(const std::vector<long long>& samples,
                                 double mean, double min_expected) {
  if (samples.empty()) throw std::invalid_argument("chi_square_poisson_gof: no samples");
  if (mean <= 0.0) throw std::domain_error("chi_square_poisson_gof: mean must be positive");
  const double n = static_cast<double>(samples.size());

  long long kmax = 0;
  for (long long s : samples) kmax = std::max(kmax, s);

  // Poisson probabilities 0..kmax and the upper tail, via the recurrence.
  std::vector<double> prob(static_cast<std::size_t>(kmax) + 2, 0.0);
  double p = std::exp(-mean);
  double cum = 0.0;
  for (long long k = 0; k <= kmax; ++k) {
    prob[static_cast<std::size_t>(k)] = p;
    cum += p;
    p *= mean / static_cast<double>(k + 1);
  }
  prob.back() = std::max(0.0, 1.0 - cum);  // tail mass

  std::vector<double> observed(prob.size(), 0.0);
  for (long long s : samples) observed[static_cast<std::size_t>(s)] += 1.0;

  // Pool from the top until each bin expects at least min_expected, then from
  // the bottom likewise (relevant for large means).
  std::vector<double> obs_binned, exp_binned;
  {
    std::size_t hi = prob.size();
    double otail = 0.0, etail = 0.0;
    while (hi > 1 && etail + n * prob[hi - 1] < min_expected) {
      --hi;
      otail += observed[hi];
      etail += n * prob[hi];
    }
    std::size_t lo = 0;
    double ohead = 0.0, ehead = 0.0;
    while (lo + 1 < hi && ehead + n * prob[lo] < min_expected) {
      ohead += observed[lo];
      ehead += n * prob[lo];
      ++lo;
    }
    if (ehead > 0.0) {
      obs_binned.push_back(ohead);
      exp_binned.push_back(ehead);
    }
    for (std::size_t k = lo; k < hi; ++k) {
      obs_binned.push_back(observed[k]);
      exp_binned.push_back(n * prob[k]);
    }
    if (etail > 0.0) {
      obs_binned.push_back(otail);
      exp_binned.push_back(etail);
    }
  }

  GofResult res;
  res.dof = static_cast<int>(obs_binned.size()) - 1;
  if (res.dof < 1) {
    res.statistic = 0.0;
    res.p_value = 1.0;
    res.dof = 0;
    return res;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i < obs_binned.size(); ++i) {
    const double d = obs_binned[i] - exp_binned[i];
    chi2 += d * d / exp_binned[i];
  }
  res.statistic = chi2;
  res.p_value = chi_square_sf(chi2, res.dof);
  return res;
}

GofResult ks_test(std::vector<double> samples,
                  const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  const double sn = std::sqrt(n);
  GofResult res;
  res.statistic = d;
  res.p_value = kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
  return res;
}

GofResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  GofResult res;
  res.statistic = d;
  res.p_value = kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d);
  return res;
}

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  out.n = static_cast<long long>(values.size());
  if (values.empty()) return out;
  double s = 0.0;
  for (double v : values) s += v;
  out.mean = s / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - out.mean;
      ss += d * d;
    }
    const double var = ss / static_cast<double>(values.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(values.size()));
  }
  return out;
}

std::string TestReport::json_line() const {
  nlohmann::json j;
  j["harness"] = harness;
  j["params"] = params;
  j["estimate"] = estimate;
  j["se"] = se;
  j["statistic"] = statistic;
  j["z"] = z;            // serialized as null when undefined
  j["p"] = p_value;
  j["n"] = n;
  j["seed"] = seed;
  j["decision"] = decision.empty() ? (pass ? "pass" : "fail") : decision;
  if (!note.empty()) j["note"] = note;
  if (!rows.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e;
      e["label"] = r.label;
      e["estimate"] = r.estimate;
      e["se"] = r.se;
      e["z"] = r.z;
      e["pass"] = r.pass;
      if (r.excluded) e["excluded"] = true;
      arr.push_back(e);
    }
    j["rows"] = arr;
  }
  return j.dump();
}

}  // namespace ipvt
