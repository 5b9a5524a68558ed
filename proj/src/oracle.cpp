#include "rpia/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>

#include "rpia/errors.hpp"

namespace rpia {

namespace {

Matrix qr_least_squares(const Matrix& a, const Matrix& rhs) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (qr.rank() < a.cols()) {
    throw ConfigError("collocation matrix is rank deficient");
  }
  return qr.solve(rhs);
}

void check_normal_residual(const CollocationMatrix& a, const Matrix& q,
                           const Matrix& p) {
  const Matrix res = a.transpose_times(q - a.times(p));
  const double scale =
      a.total_sq_norm() * p.norm() + std::sqrt(a.total_sq_norm()) * q.norm();
  if (res.norm() > 1e-10 * std::max(1.0, scale)) {
    throw Error("least-squares solve failed the normal-equation check");
  }
}

}  // namespace

Matrix least_squares_curve(const CollocationMatrix& a, const Matrix& q) {
  if (a.rows() < a.cols()) {
    throw ArgumentError("need at least as many data points as controls");
  }
  Matrix p = qr_least_squares(a.values(), q);
  check_normal_residual(a, q, p);
  return p;
}

Grid3 least_squares_surface(const CollocationMatrix& a,
                            const CollocationMatrix& bt, const Grid3& q) {
  Grid3 net(a.cols(), bt.cols());
  for (int t = 0; t < 3; ++t) {
    // Left solve in the A direction, then the transposed system in B.
    const Matrix half = qr_least_squares(a.values(), q.slice[t]);
    net.slice[t] = qr_least_squares(bt.values(), half.transpose()).transpose();
  }
  // Per-slice normal-equation residual: A^T (Q - A P B) B^T must vanish.
  double res_norm = 0.0;
  double scale = 0.0;
  for (int t = 0; t < 3; ++t) {
    const Matrix fitted = a.times(net.slice[t]) * bt.values().transpose();
    res_norm +=
        (a.transpose_times(q.slice[t] - fitted) * bt.values()).norm();
    scale += a.total_sq_norm() * bt.total_sq_norm() * net.slice[t].norm();
  }
  if (res_norm > 1e-10 * std::max(1.0, scale)) {
    throw Error("two-sided least-squares solve failed the residual check");
  }
  return net;
}

Matrix expected_iteration_matrix(const CollocationMatrix& a) {
  const Index rows = a.rows();
  Matrix op = Matrix::Identity(rows, rows);
  op.noalias() -= a.values() * a.values().transpose() / a.total_sq_norm();
  return op;
}

double spectral_radius_check(const CollocationMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a.gram());
  const Vector& lambda = eig.eigenvalues();
  double rho = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    rho = std::max(rho, std::abs(1.0 - lambda[i] / a.total_sq_norm()));
  }
  return rho;
}

}  // namespace rpia
