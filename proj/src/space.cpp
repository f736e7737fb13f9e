#include "ipvt/space.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ipvt/hyperbolic.hpp"

namespace ipvt {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

DiskPoint to_disk(const Point& p) { return {p(0), p(1)}; }
}  // namespace

SpaceModel SpaceModel::euclidean_box(const Point& lo, const Point& hi) {
  if (lo.size() < 1 || lo.size() != hi.size())
    throw std::invalid_argument("euclidean_box: dimension must be >= 1 and corners must match");
  for (int i = 0; i < lo.size(); ++i)
    if (!(hi(i) > lo(i)))
      throw std::invalid_argument("euclidean_box: side lengths must be positive");
  SpaceModel s;
  s.kind_ = Space::Euclidean;
  s.lo_ = lo;
  s.hi_ = hi;
  return s;
}

SpaceModel SpaceModel::hyperbolic_disk(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("hyperbolic_disk: radius must be positive");
  SpaceModel s;
  s.kind_ = Space::Hyperbolic;
  s.radius_ = radius;
  return s;
}

SpaceModel SpaceModel::boundary_heights(double height_max) {
  if (!std::isfinite(height_max))
    throw std::invalid_argument("boundary_heights: height ceiling must be finite");
  SpaceModel s;
  s.kind_ = Space::Heights;
  s.height_max_ = height_max;
  return s;
}

int SpaceModel::dim() const {
  switch (kind_) {
    case Space::Euclidean: return static_cast<int>(lo_.size());
    case Space::Hyperbolic: return 2;
    case Space::Heights: return 2;
  }
  return 0;
}

bool SpaceModel::contains(const Point& p) const {
  if (p.size() != dim()) return false;
  switch (kind_) {
    case Space::Euclidean:
      for (int i = 0; i < p.size(); ++i)
        if (p(i) < lo_(i) || p(i) > hi_(i)) return false;
      return true;
    case Space::Hyperbolic: {
      const double rmax = std::tanh(0.5 * radius_);
      return p.squaredNorm() <= rmax * rmax;
    }
    case Space::Heights:
      return p(0) >= 0.0 && p(0) < kTwoPi && p(1) <= height_max_;
  }
  return false;
}

double SpaceModel::canonical_mass() const {
  switch (kind_) {
    case Space::Euclidean: {
      double v = 1.0;
      for (int i = 0; i < lo_.size(); ++i) v *= hi_(i) - lo_(i);
      return v;
    }
    case Space::Hyperbolic:
      return kTwoPi * (std::cosh(radius_) - 1.0);
    case Space::Heights:
      return std::exp(height_max_);
  }
  return 0.0;
}

std::string SpaceModel::variant_name() const {
  switch (kind_) {
    case Space::Euclidean: return "euclidean";
    case Space::Hyperbolic: return "hyperbolic";
    case Space::Heights: return "heights";
  }
  return "?";
}

std::string SpaceModel::window_params() const {
  std::ostringstream os;
  switch (kind_) {
    case Space::Euclidean: {
      for (int i = 0; i < lo_.size(); ++i) os << (i ? "," : "") << format_double(lo_(i));
      os << ";";
      for (int i = 0; i < hi_.size(); ++i) os << (i ? "," : "") << format_double(hi_(i));
      break;
    }
    case Space::Hyperbolic:
      os << format_double(radius_);
      break;
    case Space::Heights:
      os << format_double(height_max_);
      break;
  }
  return os.str();
}

std::string SpaceModel::describe() const { return variant_name() + " " + window_params(); }

bool SpaceModel::operator==(const SpaceModel& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Space::Euclidean: return lo_ == other.lo_ && hi_ == other.hi_;
    case Space::Hyperbolic: return radius_ == other.radius_;
    case Space::Heights: return height_max_ == other.height_max_;
  }
  return false;
}

IntensityMeasure::IntensityMeasure(SpaceModel s, double sc) : space(std::move(s)), scale(sc) {
  if (!(scale > 0.0)) throw std::invalid_argument("IntensityMeasure: scale must be positive");
}

Region Region::box(const Point& lo, const Point& hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("Region::box: corners must match");
  for (int i = 0; i < lo.size(); ++i)
    if (!(hi(i) >= lo(i))) throw std::invalid_argument("Region::box: hi must dominate lo");
  Region r;
  r.kind = Kind::Box;
  r.lo = lo;
  r.hi = hi;
  return r;
}

Region Region::ball(const Point& center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("Region::ball: radius must be >= 0");
  Region r;
  r.kind = Kind::Ball;
  r.center = center;
  r.radius = radius;
  return r;
}

bool region_contains(const SpaceModel& space, const Region& region, const Point& p) {
  switch (region.kind) {
    case Region::Kind::Box:
      if (p.size() != region.lo.size()) return false;
      for (int i = 0; i < p.size(); ++i)
        if (p(i) < region.lo(i) || p(i) >= region.hi(i)) return false;
      return true;
    case Region::Kind::Ball:
      switch (space.kind()) {
        case Space::Euclidean:
          return (p - region.center).norm() <= region.radius;
        case Space::Hyperbolic:
          return hyperbolic_distance(to_disk(region.center), to_disk(p)) <= region.radius;
        case Space::Heights:
          throw std::invalid_argument("region_contains: no metric ball on the heights space");
      }
  }
  return false;
}

bool region_inside_window(const SpaceModel& space, const Region& region) {
  return region_enlargement_inside_window(space, region, 0.0);
}

bool region_enlargement_inside_window(const SpaceModel& space, const Region& region, double r) {
  if (r < 0.0) throw std::invalid_argument("region enlargement: r must be >= 0");
  switch (space.kind()) {
    case Space::Euclidean: {
      if (region.kind == Region::Kind::Box) {
        for (int i = 0; i < region.lo.size(); ++i)
          if (region.lo(i) - r < space.lo()(i) || region.hi(i) + r > space.hi()(i)) return false;
        return true;
      }
      for (int i = 0; i < region.center.size(); ++i)
        if (region.center(i) - region.radius - r < space.lo()(i) ||
            region.center(i) + region.radius + r > space.hi()(i))
          return false;
      return true;
    }
    case Space::Hyperbolic: {
      if (region.kind != Region::Kind::Ball)
        throw std::invalid_argument("hyperbolic windows support ball subregions only");
      const double dc = radial_distance(to_disk(region.center));
      return dc + region.radius + r <= space.radius();
    }
    case Space::Heights: {
      if (region.kind != Region::Kind::Box)
        throw std::invalid_argument("heights windows support box subregions only");
      if (r > 0.0)
        throw std::invalid_argument("heights space has no metric enlargement");
      return region.lo(0) >= 0.0 && region.hi(0) <= kTwoPi &&
             region.hi(1) <= space.height_max();
    }
  }
  return false;
}

double region_mass(const IntensityMeasure& measure, const Region& region) {
  const SpaceModel& space = measure.space;
  switch (space.kind()) {
    case Space::Euclidean: {
      if (region.kind == Region::Kind::Box) {
        double v = 1.0;
        for (int i = 0; i < region.lo.size(); ++i) v *= region.hi(i) - region.lo(i);
        return measure.scale * v;
      }
      // volume of an n-ball
      const double n = static_cast<double>(region.center.size());
      const double logv = 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0) +
                          n * std::log(region.radius);
      return measure.scale * std::exp(logv);
    }
    case Space::Hyperbolic: {
      if (region.kind != Region::Kind::Ball)
        throw std::invalid_argument("region_mass: only ball subregions on the hyperbolic disk");
      return measure.scale * kTwoPi * (std::cosh(region.radius) - 1.0);
    }
    case Space::Heights: {
      if (region.kind != Region::Kind::Box)
        throw std::invalid_argument("region_mass: only box subregions on the heights space");
      const double dxi = region.hi(0) - region.lo(0);
      const double lo_term = std::isfinite(region.lo(1)) ? std::exp(region.lo(1)) : 0.0;
      return measure.scale * (dxi / kTwoPi) * (std::exp(region.hi(1)) - lo_term);
    }
  }
  return 0.0;
}

Configuration::Configuration(SpaceModel w, std::vector<Point> pts)
    : window(std::move(w)), points(std::move(pts)) {
  for (const auto& p : points)
    if (!window.contains(p))
      throw std::invalid_argument("Configuration: point outside window");
}

long long count_in(const Configuration& config, const Region& region) {
  if (!region_inside_window(config.window, region))
    throw std::invalid_argument("count_in: subregion escapes the window (counts would be censored)");
  long long n = 0;
  for (const auto& p : config.points)
    if (region_contains(config.window, region, p)) ++n;
  return n;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_configuration(std::ostream& out, const Configuration& config) {
  out << "space=" << config.window.variant_name() << " window=" << config.window.window_params()
      << "\n";
  for (const auto& p : config.points) {
    for (int i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << format_double(p(i));
    }
    out << "\n";
  }
}

Configuration read_configuration(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("space=", 0) != 0)
    throw std::runtime_error("read_configuration: missing header");
  std::istringstream hs(line.substr(6));
  std::string variant, params;
  hs >> variant >> params;
  if (params.rfind("window=", 0) != 0)
    throw std::runtime_error("read_configuration: missing window field");
  params = params.substr(7);
  SpaceModel space = SpaceModel::hyperbolic_disk(1.0);
  if (variant == "euclidean") {
    const auto semi = params.find(';');
    if (semi == std::string::npos) throw std::runtime_error("read_configuration: bad box");
    auto parse_list = [](const std::string& s) {
      std::vector<double> v;
      std::istringstream ls(s);
      std::string tok;
      while (std::getline(ls, tok, ',')) v.push_back(std::stod(tok));
      return v;
    };
    const auto lo = parse_list(params.substr(0, semi));
    const auto hi = parse_list(params.substr(semi + 1));
    Point plo(lo.size()), phi(hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) plo(static_cast<int>(i)) = lo[i];
    for (std::size_t i = 0; i < hi.size(); ++i) phi(static_cast<int>(i)) = hi[i];
    space = SpaceModel::euclidean_box(plo, phi);
  } else if (variant == "hyperbolic") {
    space = SpaceModel::hyperbolic_disk(std::stod(params));
  } else if (variant == "heights") {
    space = SpaceModel::boundary_heights(std::stod(params));
  } else {
    throw std::runtime_error("read_configuration: unknown space variant");
  }

  std::vector<Point> points;
  const int d = space.dim();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Point p(d);
    for (int i = 0; i < d; ++i)
      if (!(ls >> p(i))) throw std::runtime_error("read_configuration: bad point line");
    points.push_back(std::move(p));
  }
  return Configuration(std::move(space), std::move(points));
}

}  // namespace ipvt
