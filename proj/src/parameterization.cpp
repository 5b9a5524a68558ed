#include "rpia/parameterization.hpp"

#include <cmath>

#include "rpia/errors.hpp"

namespace rpia {

namespace {

std::vector<double> normalize_increments(std::vector<double> inc,
                                         const char* what) {
  double total = 0.0;
  for (double v : inc) {
    if (v <= 0.0) {
      throw DegenerateDataError(std::string("zero chord length between "
                                            "consecutive ") +
                                what);
    }
    total += v;
  }
  if (total <= 0.0) throw DegenerateDataError("total chord length is zero");

  std::vector<double> params(inc.size() + 1);
  params[0] = 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < inc.size(); ++j) {
    acc += inc[j];
    params[j + 1] = acc / total;
  }
  params.back() = 1.0;
  return params;
}

}  // namespace

std::vector<double> chord_params_curve(const Matrix& points) {
  const Index m = points.rows() - 1;
  if (m < 1) throw ArgumentError("need at least two points");
  if (points.cols() != 2 && points.cols() != 3) {
    throw ArgumentError("points must be 2D or 3D");
  }
  std::vector<double> inc(m);
  for (Index j = 1; j <= m; ++j) {
    inc[j - 1] = (points.row(j) - points.row(j - 1)).norm();
  }
  return normalize_increments(std::move(inc), "points");
}

std::pair<std::vector<double>, std::vector<double>> chord_params_surface(
    const Grid3& grid) {
  const Index m = grid.rows() - 1;
  const Index p = grid.cols() - 1;
  if (m < 1 || p < 1) throw ArgumentError("grid must be at least 2 x 2");

  std::vector<double> inc_x(m, 0.0);
  for (Index h = 1; h <= m; ++h) {
    double sum = 0.0;
    for (Index t = 0; t <= p; ++t) {
      sum += (grid.at(h, t) - grid.at(h - 1, t)).norm();
    }
    inc_x[h - 1] = sum;
  }
  std::vector<double> inc_y(p, 0.0);
  for (Index l = 1; l <= p; ++l) {
    double sum = 0.0;
    for (Index s = 0; s <= m; ++s) {
      sum += (grid.at(s, l) - grid.at(s, l - 1)).norm();
    }
    inc_y[l - 1] = sum;
  }
  return {normalize_increments(std::move(inc_x), "grid rows"),
          normalize_increments(std::move(inc_y), "grid columns")};
}

KnotVector build_knot_vector(const std::vector<double>& params, Index n) {
  const Index m = static_cast<Index>(params.size()) - 1;
  if (n < 4) throw ConfigError("need at least five control points (n >= 4)");
  if (m < n) throw ConfigError("need more data points than control points");

  std::vector<double> knots;
  knots.reserve(n + 5);
  for (int k = 0; k < 4; ++k) knots.push_back(0.0);
  // j*d with d = (m+1)/(n-2), evaluated as the exact rational
  // j*(m+1) / (n-2) so that integer values of j*d are detected reliably.
  for (Index j = 1; j <= n - 3; ++j) {
    const Index num = j * (m + 1);
    const Index den = n - 2;
    const Index i = num / den;
    const double alpha = static_cast<double>(num % den) /
                         static_cast<double>(den);
    knots.push_back((1.0 - alpha) * params[i - 1] + alpha * params[i]);
  }
  for (int k = 0; k < 4; ++k) knots.push_back(1.0);
  return KnotVector(std::move(knots));
}

namespace {

Index subsample_index(Index i, Index n, Index m) {
  if (i == 0) return 0;
  if (i == n) return m;
  return (m * i) / n;
}

}  // namespace

Matrix init_controls_curve(const Matrix& points, Index n) {
  const Index m = points.rows() - 1;
  if (n < 0 || m < n) throw ConfigError("need m >= n for the initial subsample");
  Matrix controls(n + 1, points.cols());
  for (Index i = 0; i <= n; ++i) {
    controls.row(i) = points.row(subsample_index(i, n, m));
  }
  return controls;
}

Grid3 init_controls_surface(const Grid3& grid, Index n) {
  const Index m = grid.rows() - 1;
  const Index p = grid.cols() - 1;
  if (n < 0 || m < n || p < n) {
    throw ConfigError("need m >= n and p >= n for the initial subsample");
  }
  Grid3 net(n + 1, n + 1);
  for (Index i = 0; i <= n; ++i) {
    const Index h = subsample_index(i, n, m);
    for (Index j = 0; j <= n; ++j) {
      const Index l = subsample_index(j, n, p);
      net.set(i, j, grid.at(h, l));
    }
  }
  return net;
}

}  // namespace rpia
