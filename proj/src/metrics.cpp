#include "rpia/metrics.hpp"

#include <cmath>

#include "rpia/errors.hpp"

namespace rpia {

double error_numerator_curve(const Matrix& g) {
  double sum = 0.0;
  for (Index i = 0; i < g.rows(); ++i) sum += g.row(i).norm();
  return sum;
}

double error_numerator_surface(const std::array<Matrix, 3>& g) {
  double sum = 0.0;
  for (Index i = 0; i < g[0].rows(); ++i) {
    for (Index j = 0; j < g[0].cols(); ++j) {
      sum += std::sqrt(g[0](i, j) * g[0](i, j) + g[1](i, j) * g[1](i, j) +
                       g[2](i, j) * g[2](i, j));
    }
  }
  return sum;
}

double relative_error_curve(const CollocationMatrix& a, const Matrix& r_k,
                            const Matrix& r_0) {
  const double denom = error_numerator_curve(a.transpose_times(r_0));
  if (denom == 0.0) {
    throw DegenerateDataError("initial fit is already exact");
  }
  return error_numerator_curve(a.transpose_times(r_k)) / denom;
}

namespace {

std::array<Matrix, 3> basis_weighted(const CollocationMatrix& a,
                                     const CollocationMatrix& bt,
                                     const Grid3& r) {
  std::array<Matrix, 3> g;
  for (int t = 0; t < 3; ++t) {
    g[t].noalias() = a.transpose_times(r.slice[t]) * bt.values();
  }
  return g;
}

}  // namespace

double relative_error_surface(const CollocationMatrix& a,
                              const CollocationMatrix& bt, const Grid3& r_k,
                              const Grid3& r_0) {
  const double denom = error_numerator_surface(basis_weighted(a, bt, r_0));
  if (denom == 0.0) {
    throw DegenerateDataError("initial fit is already exact");
  }
  return error_numerator_surface(basis_weighted(a, bt, r_k)) / denom;
}

StopDecision should_stop(double e_k, long k, double tol, long cap) {
  if (e_k < tol) return {true, StopReason::kTolerance};
  if (k >= cap) return {true, StopReason::kIterationCap};
  return {false, StopReason::kTolerance};
}

}  // namespace rpia
