#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ipvt/seed.hpp"

namespace ipvt {

// Poincare disk model of the hyperbolic plane. Interior points are complex
// coordinates with |z| < 1; the basepoint is the origin. Boundary points are
// angles on the unit circle.

using DiskPoint = std::complex<double>;

struct IdealPoint {
  double angle = 0.0;  // reduced to [0, 2*pi)
  explicit IdealPoint(double a = 0.0);
  std::complex<double> unit() const {
    return {std::cos(angle), std::sin(angle)};
  }
};

// Orientation-preserving isometry of the disk: the Moebius map
// z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
class Isometry {
 public:
  Isometry() : a_(1.0, 0.0), b_(0.0, 0.0) {}
  Isometry(std::complex<double> a, std::complex<double> b);

  static Isometry rotation(double phi);
  // Translation by `length` along the geodesic through the origin with
  // endpoint at boundary angle `axis_angle` (the attracting direction).
  static Isometry translation(double length, double axis_angle = 0.0);

  Isometry inverse() const;
  // Composition: (g * h)(z) = g(h(z)).
  Isometry operator*(const Isometry& rhs) const;

  DiskPoint operator()(DiskPoint z) const;
  // Boundary action, evaluated directly on unit complex numbers.
  IdealPoint operator()(IdealPoint xi) const;

  std::complex<double> a() const { return a_; }
  std::complex<double> b() const { return b_; }
  Eigen::Matrix2cd matrix() const;

  // Hyperbolic displacement of the basepoint, d(o, g o).
  double basepoint_displacement() const;

 private:
  std::complex<double> a_, b_;
};

double hyperbolic_distance(DiskPoint z, DiskPoint w);

// d(o, z) = log((1+|z|)/(1-|z|))
double radial_distance(DiskPoint z);

// Interior point at hyperbolic distance rho from the origin in direction phi.
DiskPoint from_polar(double rho, double phi);

// Busemann function based at boundary angle xi, normalized to vanish at the
// origin: B_xi(y) = log(|e^{i xi} - y|^2 / (1 - |y|^2)). Decreases toward xi,
// with value -d on the ray toward xi at distance d.
double busemann(IdealPoint xi, DiskPoint y);

// Same function in geodesic polar coordinates (rho, phi) about the origin.
// Stable for arbitrarily large rho, where disk coordinates degenerate:
//   B = logcosh(rho) + log((1 - tanh rho) + 2 tanh(rho) sin^2((phi - xi)/2)).
double busemann_polar(double xi, double rho, double phi);

// Additive height cocycle of the boundary action: B_xi(g^{-1} o). The induced
// action on boundary-height atoms is (xi, s) -> (g xi, s + height_cocycle(g, xi)),
// and the cocycle identity holds: hc(g h, xi) = hc(g, h xi) + hc(h, xi).
double height_cocycle(const Isometry& g, IdealPoint xi);

// Random isometry for experiments: translation of length uniform on
// [0, max_translation] along a uniform axis, composed with a uniform rotation.
Isometry sample_isometry(double max_translation, Rng& rng);

// Four decimal reals "Re(a) Im(a) Re(b) Im(b)", 17 significant digits.
std::string serialize_isometry(const Isometry& g);
Isometry parse_isometry(const std::string& text);

double reduce_angle(double a);  // to [0, 2*pi)

}  // namespace ipvt
