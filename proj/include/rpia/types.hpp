#pragma once

#include <Eigen/Dense>

#include <array>

namespace rpia {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Rectangular grid of 3D points stored as three coordinate slices, so the
// per-coordinate matrix products of surface fitting act directly on slices.
struct Grid3 {
  std::array<Matrix, 3> slice;

  Grid3() = default;
  Grid3(Index rows, Index cols) {
    for (auto& s : slice) s = Matrix::Zero(rows, cols);
  }

  Index rows() const { return slice[0].rows(); }
  Index cols() const { return slice[0].cols(); }

  Eigen::Vector3d at(Index h, Index l) const {
    return {slice[0](h, l), slice[1](h, l), slice[2](h, l)};
  }
  void set(Index h, Index l, const Eigen::Vector3d& v) {
    slice[0](h, l) = v[0];
    slice[1](h, l) = v[1];
    slice[2](h, l) = v[2];
  }

  void setZero(Index rows, Index cols) {
    for (auto& s : slice) s = Matrix::Zero(rows, cols);
  }
};

}  // namespace rpia
