#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ipvt {

using Point = Eigen::VectorXd;

// The three model spaces, each with its bounded sampling window:
//   Euclidean  - an axis-aligned box in R^n; points are the n coordinates.
//   Hyperbolic - the ball B(o, R) of the Poincare disk, R in hyperbolic
//                distance; points are (Re z, Im z) with |z| < 1.
//   Heights    - the boundary-heights space S^1 x R truncated to heights
//                s <= s_max; points are (xi, s) with xi in [0, 2*pi).
enum class Space { Euclidean, Hyperbolic, Heights };

class SpaceModel {
 public:
  static SpaceModel euclidean_box(const Point& lo, const Point& hi);
  static SpaceModel hyperbolic_disk(double radius);
  static SpaceModel boundary_heights(double height_max);

  Space kind() const { return kind_; }
  int dim() const;  // stored coordinates per point

  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  double radius() const { return radius_; }
  double height_max() const { return height_max_; }

  bool contains(const Point& p) const;

  // Canonical measure of the whole window (Lebesgue volume, hyperbolic area,
  // or (d xi / 2 pi) x e^s ds respectively), before any intensity scaling.
  double canonical_mass() const;

  std::string variant_name() const;   // "euclidean" | "hyperbolic" | "heights"
  std::string window_params() const;  // "lo;hi" | radius | ceiling, 17 digits
  std::string describe() const;       // variant + " " + params

  bool operator==(const SpaceModel& other) const;

 private:
  Space kind_ = Space::Euclidean;
  Point lo_, hi_;
  double radius_ = 0.0;
  double height_max_ = 0.0;
};

// The pair (window, intensity): expected point count of a region A under the
// process is scale times the canonical measure of A.
struct IntensityMeasure {
  SpaceModel space;
  double scale = 1.0;

  IntensityMeasure(SpaceModel s, double sc);
  double mass() const { return scale * space.canonical_mass(); }
};

// Measurable subregions used by counting functionals and harnesses.
//   Box  - axis-aligned in stored coordinates, half-open [lo, hi); the lower
//          height bound of a Heights box may be -infinity.
//   Ball - metric ball of the space (Euclidean or hyperbolic).
struct Region {
  enum class Kind { Box, Ball };
  Kind kind = Kind::Box;
  Point lo, hi;      // Box
  Point center;      // Ball
  double radius = 0.0;

  static Region box(const Point& lo, const Point& hi);
  static Region ball(const Point& center, double radius);
};

bool region_contains(const SpaceModel& space, const Region& region, const Point& p);
bool region_inside_window(const SpaceModel& space, const Region& region);
// Does the window contain every point within distance r of the region?
bool region_enlargement_inside_window(const SpaceModel& space, const Region& region, double r);
// Expected point count of the region; throws for unsupported combinations
// (boxes in the hyperbolic disk, balls in the heights space).
double region_mass(const IntensityMeasure& measure, const Region& region);

// A finite simple point configuration in a window.
struct Configuration {
  SpaceModel window;
  std::vector<Point> points;

  explicit Configuration(SpaceModel w) : window(std::move(w)) {}
  Configuration(SpaceModel w, std::vector<Point> pts);

  std::size_t size() const { return points.size(); }
};

long long count_in(const Configuration& config, const Region& region);

// Line-oriented text format: `space=<variant> window=<params>` then one point
// per line, coordinates with 17 significant digits (round-trip exact).
void write_configuration(std::ostream& out, const Configuration& config);
Configuration read_configuration(std::istream& in);

std::string format_double(double v);  // %.17g

}  // namespace ipvt
