#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ipvt/harness.hpp"
#include "ipvt/hyperbolic.hpp"
#include "ipvt/sampling.hpp"
#include "ipvt/thinning.hpp"

using namespace ipvt;

namespace {

Point vec1(double a) {
  Point p(1);
  p << a;
  return p;
}

Point vec2(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

Point origin2() { return vec2(0.0, 0.0); }

}  // namespace

TEST_CASE("r-isolated thinning: hand examples on the line") {
  const SpaceModel w = SpaceModel::euclidean_box(vec1(-10), vec1(10));
  const Region core = Region::box(vec1(-5), vec1(8));

  Configuration both(w, {vec1(0), vec1(3)});
  auto kept = apply_thinning(ThinningRule::r_isolated(2.0), both, core);
  CHECK(kept.size() == 2);

  Configuration three(w, {vec1(0), vec1(1), vec1(5)});
  kept = apply_thinning(ThinningRule::r_isolated(2.0), three, core);
  REQUIRE(kept.size() == 1);
  CHECK(kept.points[0](0) == 5.0);

  // tie d(x,y) = r keeps the point
  Configuration tie(w, {vec1(0), vec1(2)});
  kept = apply_thinning(ThinningRule::r_isolated(2.0), tie, core);
  CHECK(kept.size() == 2);
}

TEST_CASE("independent marking: degenerate probabilities and determinism") {
  const SpaceModel w = SpaceModel::euclidean_box(vec1(0), vec1(10));
  const Region core = Region::box(vec1(0), vec1(10));
  SeedStream seed(61);
  const Configuration c = sample_poisson(IntensityMeasure(w, 2.0), seed);

  auto all = apply_thinning(ThinningRule::independent_mark(1.0, 9), c, core);
  CHECK(all.size() == c.size());
  auto none = apply_thinning(ThinningRule::independent_mark(0.0, 9), c, core);
  CHECK(none.size() == 0);

  const auto a = apply_thinning(ThinningRule::independent_mark(0.5, 9), c, core);
  const auto b = apply_thinning(ThinningRule::independent_mark(0.5, 9), c, core);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points[i] == b.points[i]);
}

TEST_CASE("thinning is a subset map and r-isolation is monotone") {
  const SpaceModel w = SpaceModel::euclidean_box(vec2(0, 0), vec2(6, 6));
  const Region core = Region::box(vec2(1, 1), vec2(5, 5));
  SeedStream seed(77);
  for (int rep = 0; rep < 30; ++rep) {
    const Configuration c = sample_poisson(IntensityMeasure(w, 1.0), seed.child(rep));
    const auto thin_xl = apply_thinning(ThinningRule::r_isolated(0.4), c, core);
    const auto thin_lg = apply_thinning(ThinningRule::r_isolated(0.9), c, core);
    auto is_member = [&](const Configuration& cfg, const Point& p) {
      return std::any_of(cfg.points.begin(), cfg.points.end(),
                         [&](const Point& q) { return q == p; });
    };
    for (const auto& p : thin_xl.points) CHECK(is_member(c, p));
    // larger r keeps fewer points
    for (const auto& p : thin_lg.points) CHECK(is_member(thin_xl, p));

    const auto marked = apply_thinning(ThinningRule::independent_mark(0.6, 5), c, core);
    for (const auto& p : marked.points) CHECK(is_member(c, p));
  }
}

TEST_CASE("r-isolation commutes with isometries of the disk") {
  const SpaceModel big = SpaceModel::hyperbolic_disk(3.5);
  const SpaceModel small = SpaceModel::hyperbolic_disk(3.0);
  SeedStream seed(345);
  Rng grng = seed.child(1000).rng();
  for (int rep = 0; rep < 20; ++rep) {
    const Configuration c = sample_poisson(IntensityMeasure(small, 1.0), seed.child(rep));
    if (c.size() == 0) continue;
    const Isometry g = sample_isometry(0.5, grng);

    Configuration moved(big);
    for (const auto& p : c.points) {
      const DiskPoint z = g(DiskPoint(p(0), p(1)));
      moved.points.push_back(vec2(z.real(), z.imag()));
    }

    const Region core = Region::ball(origin2(), 1.0);
    const DiskPoint go = g(DiskPoint(0, 0));
    const Region moved_core = Region::ball(vec2(go.real(), go.imag()), 1.0);

    const auto din = apply_thinning(ThinningRule::r_isolated(0.3), c, core);
    const auto dout = apply_thinning(ThinningRule::r_isolated(0.3), moved, moved_core);
    REQUIRE(din.size() == dout.size());
    // same points up to reordering
    for (const auto& p : din.points) {
      const DiskPoint z = g(DiskPoint(p(0), p(1)));
      bool found = false;
      for (const auto& q : dout.points)
        if (std::abs(DiskPoint(q(0), q(1)) - z) < 1e-12) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("censored-boundary guard") {
  const SpaceModel w = SpaceModel::euclidean_box(vec1(0), vec1(4));
  Configuration c(w, {vec1(2)});
  CHECK_THROWS_AS(
      apply_thinning(ThinningRule::r_isolated(1.0), c, Region::box(vec1(0), vec1(4))),
      std::invalid_argument);
  CHECK_NOTHROW(
      apply_thinning(ThinningRule::r_isolated(1.0), c, Region::box(vec1(1), vec1(3))));
}

TEST_CASE("palm insertion") {
  const SpaceModel w = SpaceModel::euclidean_box(vec1(0), vec1(4));
  Configuration empty(w);
  const auto one = palm_insert(empty, vec1(1.5));
  REQUIRE(one.size() == 1);
  CHECK(one.points[0](0) == 1.5);

  const auto two = palm_insert(one, vec1(2.5));
  CHECK(two.size() == 2);
  const auto dup = palm_insert(two, vec1(1.5));
  CHECK(dup.size() == 2);

  CHECK_THROWS_AS(palm_insert(two, vec1(9.0)), std::invalid_argument);
}

TEST_CASE("mecke identity: indicator family has both sides equal to m(A)") {
  const IntensityMeasure m(SpaceModel::euclidean_box(vec2(0, 0), vec2(3, 2)), 1.0);
  MeckeSpec spec;
  spec.family = MeckeFamily::Indicator;
  spec.region = Region::box(vec2(0.5, 0.5), vec2(2.5, 1.5));  // mass 2
  const TestReport rep = mecke_two_sided(m, spec, 8000, SeedStream(11));
  CHECK(rep.pass);
  REQUIRE(rep.rows.size() == 2);
  CHECK(std::abs(rep.rows[0].estimate - 2.0) < 3.0 * rep.rows[0].se + 1e-9);
  CHECK(std::abs(rep.rows[1].estimate - 2.0) < 3.0 * rep.rows[1].se + 1e-9);
}

TEST_CASE("mecke identity: count family reproduces the recurrence form") {
  const IntensityMeasure m(SpaceModel::euclidean_box(vec2(0, 0), vec2(3, 2)), 1.0);
  MeckeSpec spec;
  spec.family = MeckeFamily::IndicatorCount;
  spec.region = Region::box(vec2(0.5, 0.5), vec2(2.5, 1.5));
  spec.k = 2;
  const TestReport rep = mecke_two_sided(m, spec, 8000, SeedStream(13));
  CHECK(rep.pass);
  // lhs estimates k P[N=k] with N ~ Pois(2)
  const double expected = 2.0 * poisson_pmf(2, 2.0);
  CHECK(std::abs(rep.rows[0].estimate - expected) < 4.0 * rep.rows[0].se + 1e-9);
}

TEST_CASE("mecke identity: isolation family runs on both geometries") {
  MeckeSpec spec;
  spec.family = MeckeFamily::Isolation;
  spec.r = 0.3;

  const IntensityMeasure me(SpaceModel::euclidean_box(vec2(0, 0), vec2(3, 3)), 1.0);
  spec.region = Region::box(vec2(0.5, 0.5), vec2(2.5, 2.5));
  CHECK(mecke_two_sided(me, spec, 6000, SeedStream(17)).pass);

  const IntensityMeasure mh(SpaceModel::hyperbolic_disk(1.6), 1.0);
  spec.region = Region::ball(origin2(), 1.0);
  CHECK(mecke_two_sided(mh, spec, 6000, SeedStream(19)).pass);

  // enlargement violation must throw, not censor
  spec.region = Region::ball(origin2(), 1.5);
  CHECK_THROWS_AS(mecke_two_sided(mh, spec, 100, SeedStream(23)), std::invalid_argument);
}

TEST_CASE("mecke identity holds on the boundary-heights space too") {
  const IntensityMeasure m(SpaceModel::boundary_heights(std::log(8.0)), 1.0);
  Point lo(2), hi(2);
  lo << 0.0, -std::numeric_limits<double>::infinity();
  hi << 2.0 * M_PI, std::log(4.0);
  MeckeSpec spec;
  spec.family = MeckeFamily::IndicatorCount;
  spec.region = Region::box(lo, hi);
  spec.k = 3;
  const TestReport rep = mecke_two_sided(m, spec, 8000, SeedStream(97));
  CHECK(rep.pass);
  CHECK(std::abs(rep.rows[0].estimate - 3.0 * poisson_pmf(3, 4.0)) <
        4.0 * rep.rows[0].se + 1e-9);
}

TEST_CASE("renyi recurrence bins") {
  const IntensityMeasure m(SpaceModel::euclidean_box(vec1(0), vec1(2)), 1.0);

  // m(A) = 1: the k = 1 bin compares P[1] with P[0], both near 1/e
  const Region a1 = Region::box(vec1(0), vec1(1));
  const TestReport r1 = renyi_recurrence(m, a1, 3, 10000, SeedStream(29));
  CHECK(r1.pass);

  // mass-4 region, recurrence at k = 4 (both sides 4 P[3] under Pois(4))
  const IntensityMeasure m4(SpaceModel::euclidean_box(vec1(0), vec1(5)), 1.0);
  const Region a4 = Region::box(vec1(0.5), vec1(4.5));
  const TestReport r4 = renyi_recurrence(m4, a4, 6, 10000, SeedStream(31));
  CHECK(r4.pass);
  bool saw_k4 = false;
  for (const auto& row : r4.rows)
    if (row.label == "k=4" && !row.excluded) saw_k4 = true;
  CHECK(saw_k4);

  // empty region: only k = 0 is ever occupied, so the pass is vacuous
  const Region a0 = Region::box(vec1(1.0), vec1(1.0));
  const TestReport r0 = renyi_recurrence(m, a0, 3, 500, SeedStream(37));
  CHECK(r0.pass);
  for (const auto& row : r0.rows) CHECK((row.excluded || row.estimate == 0.0));
}

TEST_CASE("palm inclusion probability: the void-probability oracle") {
  // 1-D homogeneous process: P[x kept by theta_r] = exp(-2 lambda r)
  struct Case {
    double lambda, r;
  };
  for (const Case cs : {Case{1.0, 0.5}, Case{2.0, 0.25}}) {
    const IntensityMeasure m(SpaceModel::euclidean_box(vec1(0), vec1(4)), cs.lambda);
    const TestReport rep = palm_inclusion_probability(
        ThinningRule::r_isolated(cs.r), m, vec1(2.0), 10000, SeedStream(41));
    const double oracle = std::exp(-2.0 * cs.lambda * cs.r);
    CHECK(std::abs(rep.estimate - oracle) < 3.0 * rep.se);
  }

  // marking keeps the inserted point with probability p
  const IntensityMeasure m(SpaceModel::euclidean_box(vec1(0), vec1(4)), 1.0);
  const TestReport mark = palm_inclusion_probability(
      ThinningRule::independent_mark(0.3, 7), m, vec1(2.0), 10000, SeedStream(43));
  CHECK(std::abs(mark.estimate - 0.3) < 3.0 * mark.se);
  CHECK(!mark.note.empty());

  // r -> 0 removes the exclusion zone
  const TestReport tiny = palm_inclusion_probability(
      ThinningRule::r_isolated(1e-9), m, vec1(2.0), 2000, SeedStream(47));
  CHECK(tiny.estimate == doctest::Approx(1.0));
}

TEST_CASE("fullness verdicts") {
  const IntensityMeasure m(SpaceModel::euclidean_box(vec1(0), vec1(4)), 1.0);

  CHECK(fullness_verdict(ThinningRule::r_isolated(0.0), m, 4000, SeedStream(53)).decision ==
        "empirically-full");
  CHECK(fullness_verdict(ThinningRule::independent_mark(1.0, 3), m, 4000, SeedStream(59)).decision ==
        "empirically-full");
  CHECK(fullness_verdict(ThinningRule::independent_mark(0.0, 3), m, 4000, SeedStream(61)).decision ==
        "empirically-empty");
  const TestReport nt = fullness_verdict(ThinningRule::r_isolated(0.5), m, 10000, SeedStream(67));
  CHECK(nt.decision == "nontrivial");
  CHECK(std::abs(nt.estimate - std::exp(-1.0)) < 4.0 * nt.se);
}

TEST_CASE("reports serialize to JSON lines") {
  const IntensityMeasure m(SpaceModel::euclidean_box(vec1(0), vec1(2)), 1.0);
  const TestReport rep =
      renyi_recurrence(m, Region::box(vec1(0), vec1(1)), 2, 2000, SeedStream(71));
  const std::string line = rep.json_line();
  CHECK(line.find("\"harness\":\"renyi-recurrence\"") != std::string::npos);
  CHECK(line.find("\"seed\":\"71\"") != std::string::npos);
  CHECK(line.find('\n') == std::string::npos);
}
