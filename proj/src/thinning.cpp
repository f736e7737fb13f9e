#include "ipvt/thinning.hpp"

#include <cmath>
#include <stdexcept>

#include "ipvt/hyperbolic.hpp"
#include "ipvt/seed.hpp"

namespace ipvt {

ThinningRule ThinningRule::r_isolated(double r) {
  if (r < 0.0) throw std::invalid_argument("r_isolated: r must be >= 0");
  ThinningRule t;
  t.kind = Kind::RIsolated;
  t.r = r;
  return t;
}

ThinningRule ThinningRule::independent_mark(double p, std::uint64_t mark_seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("independent_mark: p must be in [0,1]");
  ThinningRule t;
  t.kind = Kind::IndependentMark;
  t.p = p;
  t.mark_seed = mark_seed;
  return t;
}

ThinningRule ThinningRule::with_mark_seed(std::uint64_t seed) const {
  ThinningRule t = *this;
  t.mark_seed = seed;
  return t;
}

double point_distance(const SpaceModel& space, const Point& a, const Point& b) {
  switch (space.kind()) {
    case Space::Euclidean:
      return (a - b).norm();
    case Space::Hyperbolic:
      return hyperbolic_distance({a(0), a(1)}, {b(0), b(1)});
    case Space::Heights:
      throw std::invalid_argument("point_distance: the heights space carries no invariant metric");
  }
  return 0.0;
}

namespace {

// uniform mark in [0,1) for point `index` under `mark_seed`
double mark_uniform(std::uint64_t mark_seed, std::size_t index) {
  std::uint64_t x = mark_seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  Rng::splitmix(x);
  Rng r(x);
  return r.uniform();
}

}  // namespace

bool rule_keeps(const ThinningRule& rule, const Configuration& config, std::size_t index) {
  const Point& x = config.points[index];
  switch (rule.kind) {
    case ThinningRule::Kind::RIsolated: {
      if (rule.r == 0.0) return true;  // identity rule, metric-free
      for (std::size_t j = 0; j < config.points.size(); ++j) {
        if (j == index) continue;
        if (point_distance(config.window, x, config.points[j]) < rule.r) return false;
      }
      return true;
    }
    case ThinningRule::Kind::IndependentMark:
      return mark_uniform(rule.mark_seed, index) < rule.p;
  }
  return false;
}

Configuration apply_thinning(const ThinningRule& rule, const Configuration& config,
                             const Region& core) {
  if (!region_inside_window(config.window, core))
    throw std::invalid_argument("apply_thinning: core escapes the window");
  if (rule.kind == ThinningRule::Kind::RIsolated &&
      !region_enlargement_inside_window(config.window, core, rule.r))
    throw std::invalid_argument(
        "apply_thinning: censored boundary (window must contain the r-enlargement of the core)");

  Configuration out(config.window);
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    if (!region_contains(config.window, core, config.points[i])) continue;
    if (rule_keeps(rule, config, i)) out.points.push_back(config.points[i]);
  }
  return out;
}

Configuration palm_insert(const Configuration& config, const Point& x) {
  if (!config.window.contains(x))
    throw std::invalid_argument("palm_insert: point outside window");
  Configuration out = config;
  for (const auto& p : out.points)
    if (p == x) return out;
  out.points.push_back(x);
  return out;
}

}  // namespace ipvt
