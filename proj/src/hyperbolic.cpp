#include "ipvt/hyperbolic.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ipvt {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

IdealPoint::IdealPoint(double a) : angle(reduce_angle(a)) {}

Isometry::Isometry(std::complex<double> a, std::complex<double> b) : a_(a), b_(b) {
  const double det = std::norm(a_) - std::norm(b_);
  if (!(det > 0.0) || std::abs(det - 1.0) > 1e-9)
    throw std::invalid_argument("Isometry: |a|^2 - |b|^2 must equal 1");
  if (std::abs(det - 1.0) > 1e-14) {
    const double s = 1.0 / std::sqrt(det);
    a_ *= s;
    b_ *= s;
  }
}

Isometry Isometry::rotation(double phi) {
  Isometry g;
  g.a_ = std::polar(1.0, 0.5 * phi);
  g.b_ = 0.0;
  return g;
}

Isometry Isometry::inverse() const {
  Isometry g;
  g.a_ = std::conj(a_);
  g.b_ = -b_;
  return g;
}

Isometry Isometry::translation(double length, double axis_angle) {
  if (length < 0.0) throw std::invalid_argument("Isometry::translation: length must be >= 0");
  Isometry g;
  g.a_ = std::cosh(0.5 * length);
  g.b_ = std::polar(std::sinh(0.5 * length), axis_angle);
  return g;
}

Isometry Isometry::operator*(const Isometry& rhs) const {
  Isometry g;
  g.a_ = a_ * rhs.a_ + b_ * std::conj(rhs.b_);
  g.b_ = a_ * rhs.b_ + b_ * std::conj(rhs.a_);
  // keep the determinant pinned against drift over long products
  const double det = std::norm(g.a_) - std::norm(g.b_);
  const double s = 1.0 / std::sqrt(det);
  g.a_ *= s;
  g.b_ *= s;
  return g;
}

DiskPoint Isometry::operator()(DiskPoint z) const {
  return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_));
}

IdealPoint Isometry::operator()(IdealPoint xi) const {
  const std::complex<double> u = xi.unit();
  const std::complex<double> num = a_ * u + b_;
  const std::complex<double> den = std::conj(b_) * u + std::conj(a_);
  return IdealPoint(std::arg(num * std::conj(den)));
}

Eigen::Matrix2cd Isometry::matrix() const {
  Eigen::Matrix2cd m;
  m << a_, b_, std::conj(b_), std::conj(a_);
  return m;
}

double Isometry::basepoint_displacement() const {
  // g(0) = b / conj(a), so d(o, g o) = 2 atanh(|b| / |a|)
  return 2.0 * std::atanh(std::abs(b_) / std::abs(a_));
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  const double num = std::norm(z - w);
  const double dz = 1.0 - std::norm(z);
  const double dw = 1.0 - std::norm(w);
  return std::acosh(1.0 + 2.0 * num / (dz * dw));
}

double radial_distance(DiskPoint z) {
  const double r = std::abs(z);
  return std::log((1.0 + r) / (1.0 - r));
}

DiskPoint from_polar(double rho, double phi) {
  return std::polar(std::tanh(0.5 * rho), phi);
}

double busemann(IdealPoint xi, DiskPoint y) {
  const std::complex<double> u = xi.unit();
  return std::log(std::norm(u - y) / (1.0 - std::norm(y)));
}

double busemann_polar(double xi, double rho, double phi) {
  if (rho < 0.0) throw std::domain_error("busemann_polar: rho must be >= 0");
  constexpr double kLog2 = 0.6931471805599453094172321;
  const double logcosh = rho + std::log1p(std::exp(-2.0 * rho)) - kLog2;
  // log(cosh rho - sinh rho cos(dphi))
  //   = logcosh + log((1 - tanh rho) + 2 tanh(rho) sin^2(dphi/2)),
  // with the two nonnegative terms combined in log space so that neither can
  // underflow (on the ray itself this reduces to exactly -rho).
  const double sh = std::sin(0.5 * (phi - xi));
  const double log_a = kLog2 - 2.0 * rho - std::log1p(std::exp(-2.0 * rho));
  const double tsh2 = 2.0 * std::tanh(rho) * sh * sh;
  if (tsh2 <= 0.0) return logcosh + log_a;
  const double log_b = std::log(tsh2);
  const double hi = std::max(log_a, log_b);
  const double lo = std::min(log_a, log_b);
  return logcosh + hi + std::log1p(std::exp(lo - hi));
}

double height_cocycle(const Isometry& g, IdealPoint xi) {
  // B_xi(g^{-1} o) with g^{-1} o = -b/a:
  //   log(|e^{i xi} + b/a|^2 / (1 - |b/a|^2)) = log(|a e^{i xi} + b|^2 / (|a|^2 - |b|^2))
  const std::complex<double> w = g.a() * xi.unit() + g.b();
  const double det = std::norm(g.a()) - std::norm(g.b());
  return std::log(std::norm(w) / det);
}

std::string serialize_isometry(const Isometry& g) {
  char buf[180];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g", g.a().real(), g.a().imag(),
                g.b().real(), g.b().imag());
  return buf;
}

Isometry parse_isometry(const std::string& text) {
  std::istringstream is(text);
  double ar, ai, br, bi;
  if (!(is >> ar >> ai >> br >> bi))
    throw std::invalid_argument("parse_isometry: expected four reals");
  return Isometry({ar, ai}, {br, bi});
}

Isometry sample_isometry(double max_translation, Rng& rng) {
  if (max_translation < 0.0)
    throw std::invalid_argument("sample_isometry: max_translation must be >= 0");
  const double length = max_translation * rng.uniform();
  const double axis = kTwoPi * rng.uniform();
  const double spin = kTwoPi * rng.uniform();
  return Isometry::translation(length, axis) * Isometry::rotation(spin);
}

}  // namespace ipvt
