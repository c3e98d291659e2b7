#pragma once

#include "io.hpp"

#include <string>

namespace hypdel::io {

/// SVG figure of a two-dimensional tessellation in the Poincare disk or the
/// upper half-plane: boundary, sites, Delaunay edges as geodesic arcs, the
/// circumspheres of the top cells (metric solid, horocycles dashed,
/// equidistant curves dotted with their axis), and the Voronoi diagram when
/// the file carries one. Geometry is computed in doubles; output bytes
/// depend only on the input. Throws GeometryError unless dim == 2 and the
/// model is poincare_ball or upper_half_space.
std::string render_svg(const TessellationFile& t, Model model);

}  // namespace hypdel::io
