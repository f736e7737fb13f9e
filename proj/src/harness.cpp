#include "ipvt/harness.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ipvt/parallel.hpp"

namespace ipvt {

namespace {

bool is_isolated(const Configuration& config, std::size_t index, double r) {
  const Point& x = config.points[index];
  for (std::size_t j = 0; j < config.points.size(); ++j) {
    if (j == index) continue;
    if (point_distance(config.window, x, config.points[j]) < r) return false;
  }
  return true;
}

double mecke_value(const MeckeSpec& spec, const Configuration& config, std::size_t index) {
  const Point& x = config.points[index];
  if (!region_contains(config.window, spec.region, x)) return 0.0;
  switch (spec.family) {
    case MeckeFamily::Indicator:
      return 1.0;
    case MeckeFamily::IndicatorCount:
      return count_in(config, spec.region) == spec.k ? 1.0 : 0.0;
    case MeckeFamily::Isolation:
      return is_isolated(config, index, spec.r) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::string family_name(MeckeFamily f) {
  switch (f) {
    case MeckeFamily::Indicator: return "indicator";
    case MeckeFamily::IndicatorCount: return "indicator-k";
    case MeckeFamily::Isolation: return "isolation";
  }
  return "?";
}

Region shrink_window(const SpaceModel& space, double r) {
  switch (space.kind()) {
    case Space::Euclidean: {
      Point lo = space.lo(), hi = space.hi();
      for (int i = 0; i < lo.size(); ++i) {
        lo(i) += r;
        hi(i) -= r;
        if (!(hi(i) > lo(i)))
          throw std::invalid_argument("fullness_verdict: window too small for dependence radius");
      }
      return Region::box(lo, hi);
    }
    case Space::Hyperbolic: {
      if (!(space.radius() > r))
        throw std::invalid_argument("fullness_verdict: window too small for dependence radius");
      Point o(2);
      o << 0.0, 0.0;
      return Region::ball(o, space.radius() - r);
    }
    case Space::Heights: {
      Point lo(2), hi(2);
      lo << 0.0, -std::numeric_limits<double>::infinity();
      hi << 6.283185307179586476925287, space.height_max();
      return Region::box(lo, hi);
    }
  }
  throw std::logic_error("shrink_window: unreachable");
}

}  // namespace

TestReport mecke_two_sided(const IntensityMeasure& measure, const MeckeSpec& spec,
                           long long replicas, const SeedStream& seed) {
  if (replicas < 2) throw std::invalid_argument("mecke_two_sided: need at least 2 replicas");
  if (!region_inside_window(measure.space, spec.region))
    throw std::invalid_argument("mecke_two_sided: region escapes window");
  if (spec.family == MeckeFamily::Isolation &&
      !region_enlargement_inside_window(measure.space, spec.region, spec.r))
    throw std::invalid_argument(
        "mecke_two_sided: censored boundary (window must contain the r-enlargement of A)");

  const double mass_w = measure.mass();
  const auto n = static_cast<std::size_t>(replicas);

  const std::vector<double> lhs = replica_map<double>(n, [&](std::size_t j) {
    const Configuration config = sample_poisson(measure, seed.child(j).child(0));
    double sum = 0.0;
    for (std::size_t i = 0; i < config.points.size(); ++i)
      sum += mecke_value(spec, config, i);
    return sum;
  });

  const std::vector<double> rhs = replica_map<double>(n, [&](std::size_t j) {
    const SeedStream s = seed.child(j).child(1);
    const Configuration config = sample_poisson(measure, s.child(0));
    Rng rng = s.child(1).rng();
    const Point x = sample_point(measure, rng);
    const Configuration palm = palm_insert(config, x);
    return mass_w * mecke_value(spec, palm, palm.points.size() - 1);
  });

  const MeanSe l = mean_se(lhs);
  const MeanSe r = mean_se(rhs);
  const double pooled = std::sqrt(l.se * l.se + r.se * r.se);
  const double z = pooled > 0.0 ? (l.mean - r.mean) / pooled : 0.0;

  TestReport rep;
  rep.harness = "mecke-two-sided";
  {
    std::ostringstream os;
    os << "family=" << family_name(spec.family) << " space=" << measure.space.describe()
       << " scale=" << measure.scale;
    if (spec.family == MeckeFamily::IndicatorCount) os << " k=" << spec.k;
    if (spec.family == MeckeFamily::Isolation) os << " r=" << spec.r;
    rep.params = os.str();
  }
  rep.seed = seed.describe();
  rep.n = replicas;
  rep.estimate = l.mean;
  rep.se = pooled;
  rep.z = z;
  rep.statistic = z;
  rep.pass = std::abs(z) < 3.0;
  rep.rows.push_back({"lhs", l.mean, l.se, 0.0, true, false});
  rep.rows.push_back({"rhs", r.mean, r.se, 0.0, true, false});
  return rep;
}

TestReport renyi_recurrence(const IntensityMeasure& measure, const Region& region,
                            int k_max, long long replicas, const SeedStream& seed) {
  if (k_max < 1) throw std::invalid_argument("renyi_recurrence: k_max must be >= 1");
  const double t = region_mass(measure, region);
  const auto n = static_cast<std::size_t>(replicas);

  const std::vector<long long> counts = replica_map<long long>(n, [&](std::size_t j) {
    return count_in(sample_poisson(measure, seed.child(j)), region);
  });

  std::vector<double> observed(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (long long c : counts)
    if (c <= k_max) observed[static_cast<std::size_t>(c)] += 1.0;

  const double nd = static_cast<double>(replicas);
  TestReport rep;
  rep.harness = "renyi-recurrence";
  {
    std::ostringstream os;
    os << "space=" << measure.space.describe() << " mass(A)=" << t << " k_max=" << k_max;
    rep.params = os.str();
  }
  rep.seed = seed.describe();
  rep.n = replicas;
  rep.pass = true;
  bool any_included = false;
  for (int k = 1; k <= k_max; ++k) {
    const double ok = observed[static_cast<std::size_t>(k)];
    const double ok1 = observed[static_cast<std::size_t>(k - 1)];
    ReportRow row;
    row.label = "k=" + std::to_string(k);
    if (ok + ok1 < 10.0) {
      row.excluded = true;
      row.pass = true;
      rep.rows.push_back(row);
      continue;
    }
    const double pk = ok / nd;
    const double pk1 = ok1 / nd;
    const double kd = static_cast<double>(k);
    const double diff = kd * pk - t * pk1;
    const double var = (kd * kd * pk * (1.0 - pk) + t * t * pk1 * (1.0 - pk1) +
                        2.0 * kd * t * pk * pk1) / nd;
    const double se = std::sqrt(var);
    row.estimate = diff;
    row.se = se;
    row.z = se > 0.0 ? diff / se : 0.0;
    row.pass = std::abs(row.z) < 3.0;
    any_included = true;
    if (!row.pass) rep.pass = false;
    rep.rows.push_back(row);
  }
  if (!any_included) rep.note = "all bins excluded (too few observations); vacuous pass";
  {
    double worst = 0.0;
    for (const auto& row : rep.rows)
      if (!row.excluded) worst = std::max(worst, std::abs(row.z));
    rep.statistic = worst;
    rep.z = worst;
  }
  rep.note += rep.note.empty() ? "" : "; ";
  rep.note += "per-bin 3-sigma tests; familywise level ~ k_max * 0.0027 (Bonferroni)";
  return rep;
}

TestReport palm_inclusion_probability(const ThinningRule& rule,
                                      const IntensityMeasure& measure, const Point& x,
                                      long long replicas, const SeedStream& seed) {
  if (!measure.space.contains(x))
    throw std::invalid_argument("palm_inclusion_probability: x outside window");
  if (rule.dependence_radius() > 0.0 && measure.space.kind() == Space::Heights)
    throw std::invalid_argument("palm_inclusion_probability: r-isolation needs a metric; "
                                "the heights space has none");
  if (rule.kind == ThinningRule::Kind::RIsolated && rule.r > 0.0 &&
      !region_enlargement_inside_window(measure.space, Region::ball(x, 0.0), rule.r))
    throw std::invalid_argument(
        "palm_inclusion_probability: censored boundary (window must contain B(x, r))");

  const auto n = static_cast<std::size_t>(replicas);
  const std::vector<double> kept = replica_map<double>(n, [&](std::size_t j) {
    const SeedStream s = seed.child(j);
    const Configuration config = sample_poisson(measure, s.child(0));
    const Configuration palm = palm_insert(config, x);
    ThinningRule local = rule;
    if (rule.uses_external_randomness()) {
      std::uint64_t ms = rule.mark_seed ^ (0xD1B54A32D192ED03ULL * (j + 1));
      local = rule.with_mark_seed(Rng::splitmix(ms));
    }
    return rule_keeps(local, palm, palm.points.size() - 1) ? 1.0 : 0.0;
  });

  double sum = 0.0;
  for (double v : kept) sum += v;
  const double p = sum / static_cast<double>(replicas);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));

  TestReport rep;
  rep.harness = "palm-inclusion";
  {
    std::ostringstream os;
    os << "rule=" << (rule.kind == ThinningRule::Kind::RIsolated ? "r-isolated" : "mark")
       << (rule.kind == ThinningRule::Kind::RIsolated ? " r=" : " p=")
       << (rule.kind == ThinningRule::Kind::RIsolated ? rule.r : rule.p)
       << " space=" << measure.space.describe() << " scale=" << measure.scale;
    rep.params = os.str();
  }
  rep.seed = seed.describe();
  rep.n = replicas;
  rep.estimate = p;
  rep.se = se;
  rep.pass = true;
  if (rule.uses_external_randomness())
    rep.note = "independent marking is not a factor of the points alone; it thins the marked process";
  return rep;
}

TestReport fullness_verdict(const ThinningRule& rule, const IntensityMeasure& measure,
                            long long replicas, const SeedStream& seed) {
  if (rule.dependence_radius() > 0.0 && measure.space.kind() == Space::Heights)
    throw std::invalid_argument("fullness_verdict: r-isolation needs a metric; "
                                "the heights space has none");
  const Region core = shrink_window(measure.space, rule.dependence_radius());
  const auto n = static_cast<std::size_t>(replicas);

  const std::vector<double> kept = replica_map<double>(n, [&](std::size_t j) {
    const SeedStream s = seed.child(j);
    Rng rng = s.child(0).rng();
    const Point x = sample_point_in(measure, core, rng);
    const Configuration config = sample_poisson(measure, s.child(1));
    const Configuration palm = palm_insert(config, x);
    ThinningRule local = rule;
    if (rule.uses_external_randomness()) {
      std::uint64_t ms = rule.mark_seed ^ (0xD1B54A32D192ED03ULL * (j + 1));
      local = rule.with_mark_seed(Rng::splitmix(ms));
    }
    return rule_keeps(local, palm, palm.points.size() - 1) ? 1.0 : 0.0;
  });

  double sum = 0.0;
  for (double v : kept) sum += v;
  const double p = sum / static_cast<double>(replicas);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));

  TestReport rep;
  rep.harness = "fullness-verdict";
  {
    std::ostringstream os;
    os << "rule=" << (rule.kind == ThinningRule::Kind::RIsolated ? "r-isolated" : "mark")
       << (rule.kind == ThinningRule::Kind::RIsolated ? " r=" : " p=")
       << (rule.kind == ThinningRule::Kind::RIsolated ? rule.r : rule.p)
       << " space=" << measure.space.describe() << " scale=" << measure.scale;
    rep.params = os.str();
  }
  rep.seed = seed.describe();
  rep.n = replicas;
  rep.estimate = p;
  rep.se = se;
  rep.pass = true;
  if (std::abs(p - 1.0) <= 3.0 * se)
    rep.decision = "empirically-full";
  else if (p <= 3.0 * se)
    rep.decision = "empirically-empty";
  else
    rep.decision = "nontrivial";
  if (rule.uses_external_randomness())
    rep.note = "independent marking is not a factor of the points alone; it thins the marked process";
  return rep;
}

}  // namespace ipvt
