#pragma once

#include <vector>

#include "cheeger/geometry.hpp"

namespace cheeger {

/// Closed polyline (first vertex not repeated at the end).
using Contour = std::vector<Point>;

/// Extract the closed level-`level` contours of a scalar sample grid by
/// marching squares with linear interpolation along lattice edges.
/// `values` is sampled at cell centers of `geom`, row-major. Saddle
/// cells are split by the center average. Requires that no contour
/// touches the outermost sample ring (guaranteed when the border
/// samples sit below the level).
std::vector<Contour> marching_squares(const GridGeometry& geom,
                                      const std::vector<double>& values,
                                      double level);

/// Shorten staircase noise: iterative midpoint relaxation where each
/// vertex stays within `max_dev` of its original position. Leaves
/// already-smooth contours essentially unchanged. Contours with fewer
/// than 8 vertices are returned as-is.
Contour relax_contour(const Contour& c, double max_dev, int iterations = 64);

double contour_length(const Contour& c);
double contour_signed_area(const Contour& c);

}  // namespace cheeger
