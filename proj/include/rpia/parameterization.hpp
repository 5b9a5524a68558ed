#pragma once

#include <utility>
#include <vector>

#include "rpia/bspline.hpp"
#include "rpia/types.hpp"

namespace rpia {

// Normalized accumulated chord parameters for an ordered point list
// (rows of `points`, d in {2,3}). Increments are proportional to the
// consecutive Euclidean distances; endpoints are exactly 0 and 1.
// Any coincident consecutive pair is rejected: the parameters must be
// strictly increasing.
std::vector<double> chord_params_curve(const Matrix& points);

// Chord parameters for a grid, one sequence per direction. The h-th
// x-increment is proportional to the summed row distances
// sum_t |Q(h,t) - Q(h-1,t)|, and symmetrically for y.
std::pair<std::vector<double>, std::vector<double>> chord_params_surface(
    const Grid3& grid);

// Clamped cubic knot vector with n-3 interior knots placed by parameter
// averaging: knot j+3 = (1-alpha) x_{i-1} + alpha x_i where i = floor(j*d),
// alpha = j*d - i, d = (m+1)/(n-2). i and alpha are computed in exact
// integer arithmetic, so alpha == 0 reliably selects x_{i-1}.
KnotVector build_knot_vector(const std::vector<double>& params, Index n);

// Initial control points: subsample rows 0, floor(m*i/n), ..., m.
Matrix init_controls_curve(const Matrix& points, Index n);

// Grid subsample by the same index map in both directions.
Grid3 init_controls_surface(const Grid3& grid, Index n);

}  // namespace rpia
