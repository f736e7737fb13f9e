#pragma once

#include "ipvt/sampling.hpp"
#include "ipvt/seed.hpp"
#include "ipvt/space.hpp"
#include "ipvt/stats.hpp"
#include "ipvt/thinning.hpp"

namespace ipvt {

// The documented test-function families f(x, omega) for the two-sided
// estimator of E[sum_{x in Pi} f(x, Pi)] = int E[f(x, Pi u {x})] dm(x):
//   Indicator      - 1[x in A]
//   IndicatorCount - 1[x in A] 1[|omega ∩ A| = k]
//   Isolation      - 1[x in A] 1[x is r-isolated in omega]
enum class MeckeFamily { Indicator, IndicatorCount, Isolation };

struct MeckeSpec {
  MeckeFamily family = MeckeFamily::Indicator;
  Region region;     // the set A
  int k = 0;         // IndicatorCount
  double r = 0.0;    // Isolation
};

// Two-sided Monte Carlo check of the insertion identity: the left side sums
// f over the points of a fresh sample; the right side draws x from the
// normalized measure, adjoins it, and multiplies by the window mass. Passes
// iff the two estimates agree within 3 pooled standard errors.
// For the Isolation family the window must contain the r-enlargement of A.
TestReport mecke_two_sided(const IntensityMeasure& measure, const MeckeSpec& spec,
                           long long replicas, const SeedStream& seed);

// Per-bin z-scores of k P[N=k] - m(A) P[N=k-1] for k = 1..k_max, with
// delta-method standard errors; bins with fewer than 10 combined observations
// are excluded and flagged. Passes iff every included bin has |z| < 3.
TestReport renyi_recurrence(const IntensityMeasure& measure, const Region& region,
                            int k_max, long long replicas, const SeedStream& seed);

// Monte Carlo estimate of P[x in theta(Pi u {x})] with binomial standard
// error. IndependentMark rules are re-marked per replica.
TestReport palm_inclusion_probability(const ThinningRule& rule,
                                      const IntensityMeasure& measure, const Point& x,
                                      long long replicas, const SeedStream& seed);

// The same probability averaged over x drawn from the normalized measure on
// the window shrunk by the rule's dependence radius. decision is one of
// "empirically-full" (within 3 SE of 1), "empirically-empty" (within 3 SE of
// 0), or "nontrivial".
TestReport fullness_verdict(const ThinningRule& rule, const IntensityMeasure& measure,
                            long long replicas, const SeedStream& seed);

}  // namespace ipvt
