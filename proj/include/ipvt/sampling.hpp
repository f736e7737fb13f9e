#pragma once

#include "ipvt/seed.hpp"
#include "ipvt/space.hpp"

namespace ipvt {

// Poisson probability mass e^{-t} t^k / k!, evaluated in log space.
// Requires t > 0 and k >= 0.
double poisson_pmf(long long k, double t);

// Exact Poisson variate: sequential inversion for small means, Hormann's
// transformed rejection (PTRS) for large ones.
long long sample_poisson_count(double mean, Rng& rng);

// One point from the normalized intensity measure on the whole window.
Point sample_point(const IntensityMeasure& measure, Rng& rng);

// One point from the normalized intensity measure restricted to a region.
Point sample_point_in(const IntensityMeasure& measure, const Region& region, Rng& rng);

// Poisson sample on the window: N ~ Pois(mass), then N i.i.d. points from the
// normalized measure. A pure function of (measure, seed).
Configuration sample_poisson(const IntensityMeasure& measure, const SeedStream& seed);

}  // namespace ipvt
