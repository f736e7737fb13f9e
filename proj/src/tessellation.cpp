#include "ipvt/tessellation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ipvt/thinning.hpp"

namespace ipvt {

FunctionFamily FunctionFamily::distance(const Configuration& sites) {
  if (sites.points.empty()) throw std::invalid_argument("FunctionFamily: empty family");
  FunctionFamily f;
  f.kind_ = Kind::Distance;
  f.space_ = sites.window;
  f.sites_ = sites.points;
  return f;
}

FunctionFamily FunctionFamily::normalized_distance(const Configuration& sites, double offset) {
  return normalized_distance(sites, std::vector<double>(sites.points.size(), offset));
}

FunctionFamily FunctionFamily::normalized_distance(const Configuration& sites,
                                                   std::vector<double> offsets) {
  if (sites.points.empty()) throw std::invalid_argument("FunctionFamily: empty family");
  if (offsets.size() != sites.points.size())
    throw std::invalid_argument("FunctionFamily: one offset per site required");
  FunctionFamily f;
  f.kind_ = Kind::NormalizedDistance;
  f.space_ = sites.window;
  f.sites_ = sites.points;
  f.offsets_ = std::move(offsets);
  return f;
}

FunctionFamily FunctionFamily::busemann(std::vector<IdealAtom> atoms, double validity_radius) {
  if (atoms.empty()) throw std::invalid_argument("FunctionFamily: empty family");
  FunctionFamily f;
  f.kind_ = Kind::Busemann;
  f.atoms_ = std::move(atoms);
  f.validity_radius_ = validity_radius;
  return f;
}

std::size_t FunctionFamily::size() const {
  return kind_ == Kind::Busemann ? atoms_.size() : sites_.size();
}

double FunctionFamily::value(std::size_t member, const Point& y) const {
  if (member >= size()) throw std::out_of_range("FunctionFamily: member index out of range");
  switch (kind_) {
    case Kind::Distance:
      return point_distance(space_, sites_[member], y);
    case Kind::NormalizedDistance:
      return point_distance(space_, sites_[member], y) - offsets_[member];
    case Kind::Busemann: {
      const IdealAtom& a = atoms_[member];
      return ipvt::busemann(IdealPoint(a.xi), DiskPoint(y(0), y(1))) + a.s;
    }
  }
  return 0.0;
}

double FunctionFamily::value_polar(std::size_t member, double rho, double phi) const {
  if (kind_ != Kind::Busemann)
    throw std::invalid_argument("value_polar: Busemann families only");
  if (member >= size()) throw std::out_of_range("FunctionFamily: member index out of range");
  const IdealAtom& a = atoms_[member];
  return busemann_polar(a.xi, rho, phi) + a.s;
}

CellAssignment assign(const FunctionFamily& family, const std::vector<Point>& queries) {
  const std::size_t m = family.size();
  CellAssignment out;
  out.queries = queries;
  out.winner.resize(queries.size());
  out.margin.resize(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    int best = 0;
    double best_v = family.value(0, queries[q]);
    double second = kInfiniteMargin;
    for (std::size_t i = 1; i < m; ++i) {
      const double v = family.value(i, queries[q]);
      if (v < best_v) {
        second = best_v;
        best_v = v;
        best = static_cast<int>(i);
      } else if (v < second) {
        second = v;
      }
    }
    out.winner[q] = best;
    if (m == 1) {
      out.margin[q] = kInfiniteMargin;
      out.margin_saturated = true;
    } else {
      out.margin[q] = second - best_v;
    }
  }
  return out;
}

bool cell_contains(const FunctionFamily& family, std::size_t member, const Point& y) {
  const double v = family.value(member, y);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i == member) continue;
    if (family.value(i, y) < v) return false;
  }
  return true;
}

ProbeGrid make_probe_grid(const SpaceModel& window, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("make_probe_grid: h must be positive");
  ProbeGrid grid;
  grid.h = h;
  Point lo, hi;
  switch (window.kind()) {
    case Space::Euclidean:
      lo = window.lo();
      hi = window.hi();
      break;
    case Space::Hyperbolic: {
      const double re = std::tanh(0.5 * window.radius());
      lo = Point(2);
      hi = Point(2);
      lo << -re, -re;
      hi << re, re;
      break;
    }
    case Space::Heights:
      throw std::invalid_argument("make_probe_grid: no grid on the heights space");
  }
  const int d = static_cast<int>(lo.size());
  grid.origin = lo;
  for (int i = 0; i < d; ++i) {
    grid.origin(i) += 0.5 * h;
    grid.dims.push_back(std::max(1, static_cast<int>(std::floor((hi(i) - lo(i)) / h))));
  }
  long long total = 1;
  for (int n : grid.dims) total *= n;
  grid.flat_index.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (long long flat = 0; flat < total; ++flat) {
    Point p(d);
    long long rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % grid.dims[static_cast<std::size_t>(i)]);
      rem /= grid.dims[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < d; ++i) p(i) = grid.origin(i) + h * idx[static_cast<std::size_t>(i)];
    if (window.contains(p)) {
      grid.flat_index[static_cast<std::size_t>(flat)] = static_cast<int>(grid.points.size());
      grid.points.push_back(std::move(p));
    }
  }
  return grid;
}

std::set<std::pair<int, int>> adjacency_probe(const FunctionFamily& family,
                                              const SpaceModel& window, double h) {
  const ProbeGrid grid = make_probe_grid(window, h);
  const CellAssignment cells = assign(family, grid.points);

  std::set<std::pair<int, int>> pairs;
  const int d = static_cast<int>(grid.dims.size());
  std::vector<long long> strides(static_cast<std::size_t>(d), 1);
  for (int i = d - 2; i >= 0; --i)
    strides[static_cast<std::size_t>(i)] =
        strides[static_cast<std::size_t>(i + 1)] * grid.dims[static_cast<std::size_t>(i + 1)];

  long long total = 1;
  for (int n : grid.dims) total *= n;
  for (long long flat = 0; flat < total; ++flat) {
    const int a = grid.flat_index[static_cast<std::size_t>(flat)];
    if (a < 0) continue;
    long long rem = flat;
    for (int axis = 0; axis < d; ++axis) {
      const long long coord = rem / strides[static_cast<std::size_t>(axis)];
      rem %= strides[static_cast<std::size_t>(axis)];
      if (coord + 1 >= grid.dims[static_cast<std::size_t>(axis)]) continue;
      const int b = grid.flat_index[static_cast<std::size_t>(flat + strides[static_cast<std::size_t>(axis)])];
      if (b < 0) continue;
      const int wa = cells.winner[static_cast<std::size_t>(a)];
      const int wb = cells.winner[static_cast<std::size_t>(b)];
      if (wa != wb) pairs.insert({std::min(wa, wb), std::max(wa, wb)});
    }
  }
  return pairs;
}

std::vector<RayProbe> unboundedness_probe(const FunctionFamily& family, std::size_t member,
                                          const std::vector<double>& radii) {
  if (family.kind() != FunctionFamily::Kind::Busemann)
    throw std::invalid_argument("unboundedness_probe: Busemann families only");
  if (member >= family.size())
    throw std::out_of_range("unboundedness_probe: member index out of range");
  // Along a member's own ray the probe is exact at any radius: an atom above
  // the family's truncation ceiling has value >= s - rho there, which the
  // probed member's exact value s_i - rho already beats. Atoms must not sit
  // above the certified ceiling, which a truncated family guarantees by
  // construction, so no validity check on rho is needed.
  const double phi = family.atoms()[member].xi;
  std::vector<RayProbe> out;
  out.reserve(radii.size());
  for (double rho : radii) {
    if (!(rho >= 0.0)) throw std::invalid_argument("unboundedness_probe: radii must be >= 0");
    RayProbe probe;
    probe.rho = rho;
    const double own = family.value_polar(member, rho, phi);
    double best_other = kInfiniteMargin;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (i == member) continue;
      best_other = std::min(best_other, family.value_polar(i, rho, phi));
    }
    probe.margin = family.size() == 1 ? kInfiniteMargin : best_other - own;
    probe.wins = probe.margin >= 0.0;
    out.push_back(probe);
  }
  return out;
}

void write_assignment_csv(std::ostream& out, const CellAssignment& assignment) {
  for (std::size_t q = 0; q < assignment.queries.size(); ++q) {
    const Point& p = assignment.queries[q];
    for (int i = 0; i < p.size(); ++i) out << format_double(p(i)) << ',';
    out << assignment.winner[q] << ',' << format_double(assignment.margin[q]) << "\n";
  }
}

}  // namespace ipvt
