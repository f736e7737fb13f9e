#include "ipvt/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ipvt {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void hsv_to_rgb(double h, double s, double v, int& r, int& g, int& b) {
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double rr = 0, gg = 0, bb = 0;
  if (hp < 1) { rr = c; gg = x; }
  else if (hp < 2) { rr = x; gg = c; }
  else if (hp < 3) { gg = c; bb = x; }
  else if (hp < 4) { gg = x; bb = c; }
  else if (hp < 5) { rr = x; bb = c; }
  else { rr = c; bb = x; }
  const double m = v - c;
  r = static_cast<int>(std::lround(255.0 * (rr + m)));
  g = static_cast<int>(std::lround(255.0 * (gg + m)));
  b = static_cast<int>(std::lround(255.0 * (bb + m)));
}

}  // namespace

std::string palette_color(int index) {
  // golden-angle hue walk, alternating brightness bands
  const double hue = std::fmod(137.50776405003785 * index, 360.0);
  const double val = 0.95 - 0.25 * ((index / 3) % 2);
  const double sat = 0.55 + 0.15 * ((index / 2) % 2);
  int r, g, b;
  hsv_to_rgb(hue, sat, val, r, g, b);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string render_grid_svg(const ProbeGrid& grid, const CellAssignment& assignment,
                            const SpaceModel& window, int image_px) {
  if (grid.dims.size() != 2)
    throw std::invalid_argument("render_grid_svg: 2-D grids only");
  if (assignment.queries.size() != grid.points.size())
    throw std::invalid_argument("render_grid_svg: assignment does not match grid");

  // window bounding box in stored coordinates
  double lo_x, lo_y, span;
  if (window.kind() == Space::Hyperbolic) {
    const double re = std::tanh(0.5 * window.radius());
    lo_x = -re;
    lo_y = -re;
    span = 2.0 * re;
  } else {
    lo_x = window.lo()(0);
    lo_y = window.lo()(1);
    span = std::max(window.hi()(0) - lo_x, window.hi()(1) - lo_y);
  }
  const double px_per_unit = static_cast<double>(image_px) / span;
  const double cell_px = grid.h * px_per_unit;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << image_px << "\" height=\""
      << image_px << "\" viewBox=\"0 0 " << image_px << " " << image_px << "\">\n";
  svg << "<rect width=\"" << image_px << "\" height=\"" << image_px << "\" fill=\"white\"/>\n";

  for (std::size_t q = 0; q < grid.points.size(); ++q) {
    const Point& p = grid.points[q];
    const double x = (p(0) - 0.5 * grid.h - lo_x) * px_per_unit;
    // image y axis points down
    const double y = (span - (p(1) + 0.5 * grid.h - lo_y)) * px_per_unit;
    svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cell_px + 0.1)
        << "\" height=\"" << fmt(cell_px + 0.1) << "\" fill=\""
        << palette_color(assignment.winner[q]) << "\"/>\n";
  }

  if (window.kind() == Space::Hyperbolic) {
    const double re = std::tanh(0.5 * window.radius());
    const double cx = (0.0 - lo_x) * px_per_unit;
    const double cy = (span - (0.0 - lo_y)) * px_per_unit;
    svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\""
        << fmt(re * px_per_unit) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    // the ideal boundary, for reference
    svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\""
        << fmt(1.0 * px_per_unit) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" stroke-dasharray=\"4 3\"/>\n";
  } else {
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt((window.hi()(0) - lo_x) * px_per_unit)
        << "\" height=\"" << fmt((window.hi()(1) - lo_y) * px_per_unit)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ipvt
