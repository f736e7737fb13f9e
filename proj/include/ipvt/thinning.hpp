#pragma once

#include <cstdint>

#include "ipvt/space.hpp"

namespace ipvt {

// A rule selecting a subset of a configuration's points.
//   RIsolated(r)       - keep x iff every other point is at distance >= r
//                        (a factor of the points alone; r = 0 is the identity).
//   IndependentMark(p) - keep each point with probability p, using marks
//                        derived from (mark_seed, point index). Not a factor
//                        of the points: it thins the marked process.
struct ThinningRule {
  enum class Kind { RIsolated, IndependentMark };
  Kind kind = Kind::RIsolated;
  double r = 0.0;
  double p = 1.0;
  std::uint64_t mark_seed = 0;

  static ThinningRule r_isolated(double r);
  static ThinningRule independent_mark(double p, std::uint64_t mark_seed);

  bool uses_external_randomness() const { return kind == Kind::IndependentMark; }
  // radius around a point within which the keep decision can depend on others
  double dependence_radius() const { return kind == Kind::RIsolated ? r : 0.0; }
  // reseeded copy (replicated experiments need fresh marks per replica)
  ThinningRule with_mark_seed(std::uint64_t seed) const;
};

// Pairwise distance in the window's model space; the heights space carries no
// invariant metric and is rejected.
double point_distance(const SpaceModel& space, const Point& a, const Point& b);

// Apply the rule to the configuration and report the kept points inside
// `core`. For RIsolated the window must contain the r-enlargement of the
// core, otherwise the result would be silently censored and the call throws.
Configuration apply_thinning(const ThinningRule& rule, const Configuration& config,
                             const Region& core);

// Does the rule keep `x` as a member of `config` (x must be a point of it)?
bool rule_keeps(const ThinningRule& rule, const Configuration& config, std::size_t index);

// The configuration with x adjoined (deduplicated if already present).
Configuration palm_insert(const Configuration& config, const Point& x);

}  // namespace ipvt
