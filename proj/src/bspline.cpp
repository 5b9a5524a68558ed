#include "rpia/bspline.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpia/errors.hpp"

namespace rpia {

namespace {

constexpr int kDeg = KnotVector::kDegree;

}  // namespace

KnotVector::KnotVector(std::vector<double> knots) : knots_(std::move(knots)) {
  const auto count = static_cast<Index>(knots_.size());
  if (count < 2 * (kDeg + 1)) {
    throw ArgumentError("knot vector too short for degree 3");
  }
  for (int i = 0; i <= kDeg; ++i) {
    if (knots_[i] != 0.0) throw ArgumentError("first degree+1 knots must be 0");
    if (knots_[count - 1 - i] != 1.0) {
      throw ArgumentError("last degree+1 knots must be 1");
    }
  }
  for (Index i = 1; i < count; ++i) {
    if (knots_[i] < knots_[i - 1]) {
      throw ArgumentError("knots must be nondecreasing");
    }
  }
  for (Index i = kDeg + 1; i < count - kDeg - 1; ++i) {
    if (knots_[i] <= 0.0 || knots_[i] >= 1.0) {
      throw ArgumentError("interior knots must lie strictly inside (0,1)");
    }
  }
}

KnotVector KnotVector::uniform_clamped(Index basis_count) {
  if (basis_count < kDeg + 1) {
    throw ArgumentError("need at least degree+1 basis functions");
  }
  const Index interior = basis_count - kDeg - 1;
  std::vector<double> knots;
  knots.reserve(basis_count + kDeg + 1);
  for (int i = 0; i <= kDeg; ++i) knots.push_back(0.0);
  for (Index j = 1; j <= interior; ++j) {
    knots.push_back(static_cast<double>(j) / static_cast<double>(interior + 1));
  }
  for (int i = 0; i <= kDeg; ++i) knots.push_back(1.0);
  return KnotVector(std::move(knots));
}

namespace {

// Index of the knot span containing u; u == 1 belongs to the last
// non-empty span so the end point evaluates cleanly.
Index find_span(const std::vector<double>& t, Index n, double u) {
  if (u >= t[n + 1]) return n;
  Index lo = kDeg;
  Index hi = n + 1;
  // t[lo] <= u < t[hi]
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    if (u < t[mid]) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

}  // namespace

BasisSpan eval_basis_span(const KnotVector& kv, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("parameter outside [0,1]");
  }
  const auto& t = kv.knots();
  const Index n = kv.basis_count() - 1;
  const Index span = find_span(t, n, u);

  // Triangular scheme over the degree+1 functions alive on this span.
  // Every denominator spans at least the current non-empty interval, so no
  // zero divisions occur here.
  std::array<double, kDeg + 1> left{};
  std::array<double, kDeg + 1> right{};
  BasisSpan out;
  out.first = span - kDeg;
  out.values[0] = 1.0;
  for (int j = 1; j <= kDeg; ++j) {
    left[j] = u - t[span + 1 - j];
    right[j] = t[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out.values[r] / (right[r + 1] + left[j - r]);
      out.values[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out.values[j] = saved;
  }
  return out;
}

Vector eval_all_basis(const KnotVector& kv, double u) {
  const BasisSpan span = eval_basis_span(kv, u);
  Vector out = Vector::Zero(kv.basis_count());
  for (int k = 0; k <= kDeg; ++k) out[span.first + k] = span.values[k];
  return out;
}

CollocationMatrix::CollocationMatrix(Matrix values)
    : values_(std::move(values)) {
  if (values_.size() == 0) throw ArgumentError("empty collocation matrix");
  const Index cols = values_.cols();
  col_sq_norms_.resize(cols);
  col_ranges_.resize(cols);
  for (Index i = 0; i < cols; ++i) {
    col_sq_norms_[i] = values_.col(i).squaredNorm();
    Index first = 0;
    Index last = values_.rows();  // one past the final nonzero
    while (first < last && values_(first, i) == 0.0) ++first;
    while (last > first && values_(last - 1, i) == 0.0) --last;
    col_ranges_[i] = {first, last - first};
  }
  total_sq_norm_ = col_sq_norms_.sum();
}

Matrix CollocationMatrix::transpose_times(const Matrix& r) const {
  if (r.rows() != rows()) throw ArgumentError("row count mismatch in A^T r");
  Matrix g(cols(), r.cols());
  for (Index i = 0; i < cols(); ++i) {
    const auto [first, count] = col_ranges_[i];
    if (count == 0) {
      g.row(i).setZero();
    } else {
      g.row(i).noalias() =
          values_.col(i).segment(first, count).transpose() *
          r.middleRows(first, count);
    }
  }
  return g;
}

Matrix CollocationMatrix::times(const Matrix& p) const {
  if (p.rows() != cols()) throw ArgumentError("row count mismatch in A p");
  Matrix out = Matrix::Zero(rows(), p.cols());
  for (Index i = 0; i < cols(); ++i) {
    const auto [first, count] = col_ranges_[i];
    if (count > 0) {
      out.middleRows(first, count).noalias() +=
          values_.col(i).segment(first, count) * p.row(i);
    }
  }
  return out;
}

Matrix CollocationMatrix::gram() const {
  Matrix g = Matrix::Zero(cols(), cols());
  for (Index i = 0; i < cols(); ++i) {
    g(i, i) = col_sq_norms_[i];
    const auto [fi, ci] = col_ranges_[i];
    for (Index j = i + 1; j < cols(); ++j) {
      const auto [fj, cj] = col_ranges_[j];
      const Index first = std::max(fi, fj);
      const Index last = std::min(fi + ci, fj + cj);
      if (last <= first) continue;
      const double dot = values_.col(i)
                             .segment(first, last - first)
                             .dot(values_.col(j).segment(first, last - first));
      g(i, j) = dot;
      g(j, i) = dot;
    }
  }
  return g;
}

CollocationMatrix collocation(const KnotVector& kv,
                              const std::vector<double>& params) {
  const auto rows = static_cast<Index>(params.size());
  if (rows < 2) throw ArgumentError("need at least two parameters");
  if (params.front() != 0.0 || params.back() != 1.0) {
    throw ArgumentError("parameters must start at 0 and end at 1");
  }
  for (Index h = 1; h < rows; ++h) {
    if (!(params[h] > params[h - 1])) {
      throw ArgumentError("parameters must be strictly increasing");
    }
  }
  Matrix values = Matrix::Zero(rows, kv.basis_count());
  for (Index h = 0; h < rows; ++h) {
    const BasisSpan span = eval_basis_span(kv, params[h]);
    for (int k = 0; k <= kDeg; ++k) {
      values(h, span.first + k) = span.values[k];
    }
  }
  return CollocationMatrix(std::move(values));
}

Vector singular_values(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

bool rank_full_from_singular_values(const Vector& svals, Index cols) {
  if (svals.size() < cols) return false;
  const double sigma_max = svals[0];
  const double sigma_min = svals[svals.size() - 1];
  const double tol = static_cast<double>(cols) *
                     std::numeric_limits<double>::epsilon() * sigma_max;
  return sigma_max > 0.0 && sigma_min > tol;
}

bool column_rank_full(const CollocationMatrix& a) {
  if (a.rows() < a.cols()) {
    throw ArgumentError("rank check requires at least as many rows as columns");
  }
  return rank_full_from_singular_values(singular_values(a.values()), a.cols());
}

}  // namespace rpia
