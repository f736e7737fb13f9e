#pragma once

#include <string>

#include "ipvt/tessellation.hpp"

namespace ipvt {

// Deterministic SVG of a grid assignment: one filled square per in-window
// grid cell, color keyed to the winner index, with the window outline on top
// (the unit circle for disk windows). Identical assignments render to
// byte-identical documents.
std::string render_grid_svg(const ProbeGrid& grid, const CellAssignment& assignment,
                            const SpaceModel& window, int image_px = 512);

// Golden-angle palette: member index -> "#rrggbb".
std::string palette_color(int index);

}  // namespace ipvt
