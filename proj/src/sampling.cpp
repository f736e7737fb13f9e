#include "ipvt/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "ipvt/hyperbolic.hpp"

namespace ipvt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kPtrsCutoff = 30.0;

long long poisson_inversion(double mean, Rng& rng) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  long long k = 0;
  const long long cap = 200 + static_cast<long long>(20.0 * mean);
  while (u > cdf && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// PTRS transformed rejection (Hormann), exact for mean >= 10 or so.
long long poisson_ptrs(double mean, Rng& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform_pos();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = kf * loglam - mean - std::lgamma(kf + 1.0);
    if (lhs <= rhs) return static_cast<long long>(kf);
  }
}

Point euclidean_box_point(const Point& lo, const Point& hi, Rng& rng) {
  Point p(lo.size());
  for (int i = 0; i < lo.size(); ++i)
    p(i) = lo(i) + (hi(i) - lo(i)) * rng.uniform_pos();
  return p;
}

// Inverse-CDF radial draw on a hyperbolic ball about the origin:
// rho = acosh(1 + U (cosh R - 1)), angle uniform.
Point hyperbolic_ball_point(double radius, Rng& rng) {
  const double u = rng.uniform_pos();
  const double rho = std::acosh(1.0 + u * (std::cosh(radius) - 1.0));
  const double theta = kTwoPi * rng.uniform();
  const DiskPoint z = from_polar(rho, theta);
  Point p(2);
  p << z.real(), z.imag();
  return p;
}

}  // namespace

double poisson_pmf(long long k, double t) {
  if (!(t > 0.0)) throw std::domain_error("poisson_pmf: t must be positive");
  if (k < 0) throw std::domain_error("poisson_pmf: k must be nonnegative");
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(t) - t - std::lgamma(kd + 1.0));
}

long long sample_poisson_count(double mean, Rng& rng) {
  if (mean < 0.0) throw std::domain_error("sample_poisson_count: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < kPtrsCutoff) return poisson_inversion(mean, rng);
  return poisson_ptrs(mean, rng);
}

Point sample_point(const IntensityMeasure& measure, Rng& rng) {
  const SpaceModel& s = measure.space;
  switch (s.kind()) {
    case Space::Euclidean:
      return euclidean_box_point(s.lo(), s.hi(), rng);
    case Space::Hyperbolic:
      return hyperbolic_ball_point(s.radius(), rng);
    case Space::Heights: {
      Point p(2);
      p(0) = kTwoPi * rng.uniform();
      p(1) = s.height_max() + std::log(rng.uniform_pos());
      return p;
    }
  }
  throw std::logic_error("sample_point: unreachable");
}

Point sample_point_in(const IntensityMeasure& measure, const Region& region, Rng& rng) {
  const SpaceModel& s = measure.space;
  if (!region_inside_window(s, region))
    throw std::invalid_argument("sample_point_in: region escapes window");
  switch (s.kind()) {
    case Space::Euclidean: {
      if (region.kind == Region::Kind::Box)
        return euclidean_box_point(region.lo, region.hi, rng);
      // uniform ball draw: gaussian direction, radius R U^{1/n}
      const int n = static_cast<int>(region.center.size());
      Point dir(n);
      double nrm = 0.0;
      do {
        for (int i = 0; i < n; ++i) dir(i) = rng.normal();
        nrm = dir.norm();
      } while (nrm == 0.0);
      const double r = region.radius * std::pow(rng.uniform_pos(), 1.0 / n);
      return region.center + (r / nrm) * dir;
    }
    case Space::Hyperbolic: {
      if (region.kind != Region::Kind::Ball)
        throw std::invalid_argument("sample_point_in: hyperbolic regions are balls");
      Point p = hyperbolic_ball_point(region.radius, rng);
      const DiskPoint c(region.center(0), region.center(1));
      if (std::abs(c) > 0.0) {
        // move the origin-centered draw by the isometry taking o to the center
        const Isometry g = Isometry::translation(radial_distance(c), std::arg(c));
        const DiskPoint z = g(DiskPoint(p(0), p(1)));
        p(0) = z.real();
        p(1) = z.imag();
      }
      return p;
    }
    case Space::Heights: {
      if (region.kind != Region::Kind::Box)
        throw std::invalid_argument("sample_point_in: heights regions are boxes");
      Point p(2);
      p(0) = region.lo(0) + (region.hi(0) - region.lo(0)) * rng.uniform_pos();
      const double w_hi = std::exp(region.hi(1));
      const double w_lo = std::isfinite(region.lo(1)) ? std::exp(region.lo(1)) : 0.0;
      p(1) = std::log(w_lo + (w_hi - w_lo) * rng.uniform_pos());
      return p;
    }
  }
  throw std::logic_error("sample_point_in: unreachable");
}

Configuration sample_poisson(const IntensityMeasure& measure, const SeedStream& seed) {
  const double m = measure.mass();
  if (!std::isfinite(m))
    throw std::invalid_argument("sample_poisson: unbounded window (infinite mass)");
  Rng rng = seed.rng();
  const long long n = sample_poisson_count(m, rng);
  Configuration config(measure.space);
  config.points.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) config.points.push_back(sample_point(measure, rng));
  return config;
}

}  // namespace ipvt
