#pragma once

#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "ipvt/hyperbolic.hpp"
#include "ipvt/space.hpp"

namespace ipvt {

// An atom of the boundary-heights process: a boundary angle and a height.
struct IdealAtom {
  double xi = 0.0;
  double s = 0.0;
};

// A finite indexed family of 1-Lipschitz functions on a model space. The
// tessellation of the family assigns y to the member(s) attaining
// min_i f_i(y).
//   Distance           - f_i(y) = d(site_i, y)
//   NormalizedDistance - f_i(y) = d(site_i, y) - offset_i
//   Busemann           - f_i(y) = B_{xi_i}(y) + s_i on the hyperbolic disk
class FunctionFamily {
 public:
  enum class Kind { Distance, NormalizedDistance, Busemann };

  static FunctionFamily distance(const Configuration& sites);
  static FunctionFamily normalized_distance(const Configuration& sites, double offset);
  static FunctionFamily normalized_distance(const Configuration& sites,
                                            std::vector<double> offsets);
  // validity_radius: queries in B(o, validity_radius) see the same winners as
  // the untruncated family the atoms were cut from; infinity means the family
  // is complete as given.
  static FunctionFamily busemann(std::vector<IdealAtom> atoms,
                                 double validity_radius = std::numeric_limits<double>::infinity());

  Kind kind() const { return kind_; }
  std::size_t size() const;
  const SpaceModel& space() const { return space_; }
  const std::vector<Point>& sites() const { return sites_; }
  const std::vector<IdealAtom>& atoms() const { return atoms_; }
  double validity_radius() const { return validity_radius_; }

  double value(std::size_t member, const Point& y) const;
  // Same member function in geodesic polar coordinates about the origin
  // (Busemann families only; stable at any radius).
  double value_polar(std::size_t member, double rho, double phi) const;

 private:
  Kind kind_ = Kind::Distance;
  SpaceModel space_ = SpaceModel::hyperbolic_disk(1.0);
  std::vector<Point> sites_;
  std::vector<double> offsets_;
  std::vector<IdealAtom> atoms_;
  double validity_radius_ = std::numeric_limits<double>::infinity();
};

// Sentinel margin for single-member families (largest finite double).
inline constexpr double kInfiniteMargin = std::numeric_limits<double>::max();

struct CellAssignment {
  std::vector<Point> queries;
  std::vector<int> winner;        // lowest index attaining the minimum
  std::vector<double> margin;     // runner-up value minus winner value
  bool margin_saturated = false;  // some margin is the single-member sentinel
};

CellAssignment assign(const FunctionFamily& family, const std::vector<Point>& queries);

// Closed-cell membership: member i attains the family minimum at y (ties
// count, so boundaries belong to every minimizer).
bool cell_contains(const FunctionFamily& family, std::size_t member, const Point& y);

// Axis-aligned probe grid over a window (cell centers, spacing h in stored
// coordinates); disk windows are masked to the inscribed disk.
struct ProbeGrid {
  std::vector<int> dims;
  std::vector<Point> points;       // in-window cell centers
  std::vector<int> flat_index;     // full-mesh cell -> index into points, -1 outside
  Point origin;                    // coordinate of mesh cell (0,...,0) center
  double h = 0.0;
};
ProbeGrid make_probe_grid(const SpaceModel& window, double h);

// Empirical adjacency: pairs of members winning at neighboring grid cells.
std::set<std::pair<int, int>> adjacency_probe(const FunctionFamily& family,
                                              const SpaceModel& window, double h);

// Does `member` of a Busemann family win at the point of hyperbolic distance
// rho from the origin along the ray toward its own boundary angle?
struct RayProbe {
  double rho = 0.0;
  bool wins = false;
  double margin = 0.0;  // min over other members minus own value
};
std::vector<RayProbe> unboundedness_probe(const FunctionFamily& family, std::size_t member,
                                          const std::vector<double>& radii);

// CSV export: query coordinates, winner index, margin.
void write_assignment_csv(std::ostream& out, const CellAssignment& assignment);

}  // namespace ipvt
