#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "ipvt/hyperbolic.hpp"
#include "ipvt/sampling.hpp"
#include "ipvt/space.hpp"
#include "ipvt/stats.hpp"

#include "oracles.hpp"

using namespace ipvt;

namespace {

DiskPoint random_disk_point(Rng& rng, double rho_max = 2.0) {
  const double rho = rho_max * rng.uniform();
  const double phi = 2.0 * M_PI * rng.uniform();
  return from_polar(rho, phi);
}

}  // namespace

TEST_CASE("distance: radial closed form against quadrature of the metric") {
  CHECK(hyperbolic_distance({0, 0}, {0, 0}) == 0.0);

  // along the radius the metric is 2 dr / (1 - r^2)
  for (double u : {0.1, 0.5, 0.9}) {
    const double quad =
        oracles::simpson([](double r) { return 2.0 / (1.0 - r * r); }, 0.0, u, 4000);
    CHECK(hyperbolic_distance({0, 0}, {u, 0}) == doctest::Approx(quad).epsilon(1e-10));
    CHECK(hyperbolic_distance({0, 0}, {u, 0}) ==
          doctest::Approx(std::log((1 + u) / (1 - u))).epsilon(1e-12));
  }
  CHECK(hyperbolic_distance({0, 0}, {0.5, 0}) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("distance: metric axioms on random triples") {
  Rng rng(31337);
  for (int i = 0; i < 300; ++i) {
    const DiskPoint a = random_disk_point(rng), b = random_disk_point(rng),
                    c = random_disk_point(rng);
    const double dab = hyperbolic_distance(a, b);
    CHECK(dab == doctest::Approx(hyperbolic_distance(b, a)).epsilon(1e-13));
    CHECK(dab >= 0.0);
    CHECK(dab <= hyperbolic_distance(a, c) + hyperbolic_distance(c, b) + 1e-12);
  }
}

TEST_CASE("busemann: normalization and the geodesic-limit oracle") {
  Rng rng(555);
  for (int i = 0; i < 20; ++i) {
    const double xi = 2.0 * M_PI * rng.uniform();
    CHECK(busemann(IdealPoint(xi), {0, 0}) == doctest::Approx(0.0).epsilon(1e-14));
  }

  // toward xi the value is -d, away from xi it is +d
  for (double d : {0.3, 1.0, 2.5}) {
    const double xi = 0.7;
    const DiskPoint toward = from_polar(d, xi);
    const DiskPoint away = from_polar(d, xi + M_PI);
    CHECK(busemann(IdealPoint(xi), toward) == doctest::Approx(-d).epsilon(1e-12));
    CHECK(busemann(IdealPoint(xi), away) == doctest::Approx(d).epsilon(1e-12));
  }

  // random points against d(y, gamma_xi(T)) - T at T = 15
  for (int i = 0; i < 100; ++i) {
    const double xi = 2.0 * M_PI * rng.uniform();
    const double rho = 2.0 * rng.uniform();
    const double phi = 2.0 * M_PI * rng.uniform();
    const double oracle = oracles::busemann_limit(xi, rho, phi, 15.0);
    CHECK(std::abs(busemann(IdealPoint(xi), from_polar(rho, phi)) - oracle) <= 1e-5);
  }
}

TEST_CASE("busemann: polar form matches the disk form and is 1-Lipschitz") {
  Rng rng(808);
  for (int i = 0; i < 200; ++i) {
    const double xi = 2.0 * M_PI * rng.uniform();
    const double rho = 3.0 * rng.uniform();
    const double phi = 2.0 * M_PI * rng.uniform();
    CHECK(busemann_polar(xi, rho, phi) ==
          doctest::Approx(busemann(IdealPoint(xi), from_polar(rho, phi))).epsilon(1e-11));
  }
  // remains finite and exact on the ray at radii where disk coordinates saturate
  CHECK(busemann_polar(1.0, 50.0, 1.0) == doctest::Approx(-50.0).epsilon(1e-12));
  CHECK(busemann_polar(1.0, 400.0, 1.0) == doctest::Approx(-400.0).epsilon(1e-12));

  for (int i = 0; i < 200; ++i) {
    const double xi = 2.0 * M_PI * rng.uniform();
    const DiskPoint y = random_disk_point(rng), z = random_disk_point(rng);
    const double diff = std::abs(busemann(IdealPoint(xi), y) - busemann(IdealPoint(xi), z));
    CHECK(diff <= hyperbolic_distance(y, z) + 1e-9);
  }
}

TEST_CASE("isometries: identity, rotation, composition, inverse") {
  Rng rng(4242);
  const Isometry id;
  const DiskPoint z = random_disk_point(rng);
  CHECK(std::abs(id(z) - z) < 1e-15);
  CHECK(id(IdealPoint(1.25)).angle == doctest::Approx(1.25));

  const Isometry rot = Isometry::rotation(0.8);
  CHECK(std::abs(rot(z) - z * std::polar(1.0, 0.8)) < 1e-14);
  CHECK(rot(IdealPoint(1.0)).angle == doctest::Approx(1.8));

  for (int i = 0; i < 100; ++i) {
    const Isometry g = sample_isometry(2.0, rng);
    const Isometry h = sample_isometry(2.0, rng);
    const DiskPoint w = random_disk_point(rng);
    CHECK(std::abs((g * h)(w) - g(h(w))) < 1e-12);
    CHECK(std::abs((g * g.inverse())(w) - w) < 1e-12);
    // determinant pinned
    const double det = std::norm(g.a()) - std::norm(g.b());
    CHECK(det == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("translations: length recovery and the axis endpoints") {
  for (double L : {0.0, 0.4, 1.7, 3.0}) {
    const Isometry g = Isometry::translation(L, 0.0);
    CHECK(hyperbolic_distance({0, 0}, g({0, 0})) == doctest::Approx(L).epsilon(1e-10));
    CHECK(g.basepoint_displacement() == doctest::Approx(L).epsilon(1e-12));
  }
  // generic axis
  const Isometry g = Isometry::translation(1.3, 2.1);
  const DiskPoint image = g({0, 0});
  CHECK(std::arg(image) == doctest::Approx(2.1));
  CHECK(radial_distance(image) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("isometries preserve the distance") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const Isometry g = sample_isometry(3.0, rng);
    const DiskPoint z = random_disk_point(rng), w = random_disk_point(rng);
    CHECK(std::abs(hyperbolic_distance(g(z), g(w)) - hyperbolic_distance(z, w)) <= 1e-10);
  }
}

TEST_CASE("isometries preserve the area measure (pushforward KS)") {
  // push 10^4 uniform draws of a disk window through g, restrict to a fixed
  // sub-ball, and compare radial statistics with direct sampling
  SeedStream seed(2718);
  const Isometry g = Isometry::translation(0.6, 1.0) * Isometry::rotation(0.3);
  const IntensityMeasure window(SpaceModel::hyperbolic_disk(3.0), 1.0);
  const double sub_radius = 1.2;

  std::vector<double> pushed, direct;
  Rng rng = seed.child(0).rng();
  Rng rng2 = seed.child(1).rng();
  while (pushed.size() < 10000) {
    // sample on g^{-1}(sub-ball) by rejection from the window, then push
    const Point p = sample_point(window, rng);
    const DiskPoint z = g(DiskPoint(p(0), p(1)));
    if (radial_distance(z) <= sub_radius) pushed.push_back(radial_distance(z));
  }
  while (direct.size() < 10000) {
    const Point p = sample_point(window, rng2);
    const DiskPoint z(p(0), p(1));
    if (radial_distance(z) <= sub_radius) direct.push_back(radial_distance(z));
  }
  const auto ks = ks_two_sample(pushed, direct);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("height cocycle: trivial cases and the translation value") {
  Rng rng(1001);
  const Isometry id;
  const Isometry rot = Isometry::rotation(1.1);
  for (int i = 0; i < 30; ++i) {
    const IdealPoint xi(2.0 * M_PI * rng.uniform());
    CHECK(height_cocycle(id, xi) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(height_cocycle(rot, xi)) < 1e-13);
  }

  // translation of length L attracting toward angle 0: the cocycle at the
  // attracting endpoint is +L; check against the geodesic-limit oracle at
  // g^{-1} o, which sits at distance L in direction pi
  for (double L : {0.5, 2.0, 5.0}) {
    const Isometry g = Isometry::translation(L, 0.0);
    const double oracle = oracles::busemann_limit(0.0, L, M_PI, 30.0);
    CHECK(height_cocycle(g, IdealPoint(0.0)) == doctest::Approx(L).epsilon(1e-10));
    CHECK(height_cocycle(g, IdealPoint(0.0)) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("busemann equivariance and the cocycle identity") {
  Rng rng(321);
  for (int i = 0; i < 1000; ++i) {
    const Isometry g = sample_isometry(3.0, rng);
    const Isometry h = sample_isometry(3.0, rng);
    const IdealPoint xi(2.0 * M_PI * rng.uniform());
    const DiskPoint y = random_disk_point(rng);

    // B_xi(g^{-1} y) = B_{g xi}(y) + B_xi(g^{-1} o)
    const double lhs = busemann(xi, g.inverse()(y));
    const double rhs = busemann(g(xi), y) + height_cocycle(g, xi);
    CHECK(std::abs(lhs - rhs) <= 1e-9);

    // cocycle additivity
    const double c_gh = height_cocycle(g * h, xi);
    const double split = height_cocycle(g, h(xi)) + height_cocycle(h, xi);
    CHECK(std::abs(c_gh - split) <= 1e-9);
  }
}

TEST_CASE("height cocycle is the boundary density: total mass stays 1") {
  // the transported boundary measure has density exp(-hc(g^{-1}, xi)) against
  // the uniform measure, so its quadrature over the circle must give 1
  Rng rng(606);
  for (int i = 0; i < 10; ++i) {
    const Isometry g = sample_isometry(2.5, rng);
    const Isometry ginv = g.inverse();
    const double total = oracles::simpson(
        [&](double xi) { return std::exp(-height_cocycle(ginv, IdealPoint(xi))); }, 0.0,
        2.0 * M_PI, 4000) /
        (2.0 * M_PI);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("isometry serialization fields") {
  const Isometry g = Isometry::translation(1.0, 0.5);
  const Eigen::Matrix2cd m = g.matrix();
  CHECK(m(0, 0) == std::conj(m(1, 1)));
  CHECK(m(0, 1) == std::conj(m(1, 0)));
  CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
  CHECK_THROWS_AS(Isometry(std::complex<double>(0.5, 0), std::complex<double>(2.0, 0)),
                  std::invalid_argument);

  // four-real text form round-trips exactly
  Rng rng(2024);
  for (int i = 0; i < 20; ++i) {
    const Isometry h = sample_isometry(2.5, rng);
    const Isometry back = parse_isometry(serialize_isometry(h));
    CHECK(back.a() == h.a());
    CHECK(back.b() == h.b());
  }
  CHECK_THROWS_AS(parse_isometry("1.0 0.0"), std::invalid_argument);
}
