#pragma once

#include <array>
#include <vector>

#include "rpia/types.hpp"

namespace rpia {

// Clamped cubic knot sequence on [0,1]: four zeros, the interior knots,
// four ones. The number of basis functions is knots.size() - degree - 1.
class KnotVector {
 public:
  static constexpr int kDegree = 3;

  explicit KnotVector(std::vector<double> knots);

  int degree() const { return kDegree; }
  Index basis_count() const {
    return static_cast<Index>(knots_.size()) - kDegree - 1;
  }
  const std::vector<double>& knots() const { return knots_; }

  // Equally spaced interior knots; handy default for tests and small demos.
  static KnotVector uniform_clamped(Index basis_count);

 private:
  std::vector<double> knots_;
};

// The (degree+1) basis values that can be nonzero at u, plus the index of
// the first one.
struct BasisSpan {
  Index first = 0;
  std::array<double, KnotVector::kDegree + 1> values{};
};

BasisSpan eval_basis_span(const KnotVector& kv, double u);

// All n+1 basis values at u. Entries sum to 1; at most degree+1 are nonzero.
Vector eval_all_basis(const KnotVector& kv, double u);

// Dense matrix of basis values at the data parameters, with cached column
// norms (the Frobenius masses driving block selection) and nonzero row
// ranges per column for banded products.
class CollocationMatrix {
 public:
  explicit CollocationMatrix(Matrix values);

  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  const Matrix& values() const { return values_; }

  double col_sq_norm(Index i) const { return col_sq_norms_[i]; }
  const Vector& col_sq_norms() const { return col_sq_norms_; }
  double total_sq_norm() const { return total_sq_norm_; }

  // Rows [first, first+count) hold every nonzero of column i.
  struct ColRange {
    Index first = 0;
    Index count = 0;
  };
  ColRange col_range(Index i) const { return col_ranges_[i]; }

  // A^T * R, skipping the zero part of each column.
  Matrix transpose_times(const Matrix& r) const;
  // A * P, same banded walk from the row side.
  Matrix times(const Matrix& p) const;
  // A^T * A.
  Matrix gram() const;

 private:
  Matrix values_;
  Vector col_sq_norms_;
  double total_sq_norm_ = 0.0;
  std::vector<ColRange> col_ranges_;
};

// Basis values of kv at each parameter. Params must be strictly increasing
// from 0 to 1.
CollocationMatrix collocation(const KnotVector& kv,
                              const std::vector<double>& params);

// True iff the smallest singular value exceeds cols * eps * sigma_max.
bool column_rank_full(const CollocationMatrix& a);

// Shared by column_rank_full and the solvers, which reuse one decomposition.
Vector singular_values(const Matrix& a);
bool rank_full_from_singular_values(const Vector& svals, Index cols);

}  // namespace rpia
