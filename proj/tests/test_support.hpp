#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rpia/bspline.hpp"
#include "rpia/types.hpp"

namespace rpia::test {

// Textbook Cox-de Boor recursion with the 0/0 := 0 convention. Kept
// deliberately naive and separate from the library's triangular scheme so
// entrywise comparisons are a real cross-check.
inline double naive_basis(const std::vector<double>& t, int i, int deg,
                          double u) {
  if (deg == 0) {
    if (t[i] >= t[i + 1]) return 0.0;
    if (t[i + 1] == t.back()) {
      return (u >= t[i] && u <= t[i + 1]) ? 1.0 : 0.0;  // closed at the end
    }
    return (u >= t[i] && u < t[i + 1]) ? 1.0 : 0.0;
  }
  double left = 0.0;
  if (t[i + deg] > t[i]) {
    left = (u - t[i]) / (t[i + deg] - t[i]) * naive_basis(t, i, deg - 1, u);
  }
  double right = 0.0;
  if (t[i + deg + 1] > t[i + 1]) {
    right = (t[i + deg + 1] - u) / (t[i + deg + 1] - t[i + 1]) *
            naive_basis(t, i + 1, deg - 1, u);
  }
  return left + right;
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed,
                            double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

// Random full-rank instance; entries in [0.1, 1] keep the columns well
// away from rank deficiency.
inline Matrix random_full_rank(Index rows, Index cols, std::uint64_t seed) {
  return random_matrix(rows, cols, seed, 0.1, 1.0);
}

inline KnotVector random_knot_vector(Index basis_count, std::uint64_t seed) {
  const Index interior = basis_count - KnotVector::kDegree - 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  std::vector<double> inner(interior);
  for (auto& v : inner) v = dist(rng);
  std::sort(inner.begin(), inner.end());
  std::vector<double> knots(4, 0.0);
  knots.insert(knots.end(), inner.begin(), inner.end());
  knots.insert(knots.end(), 4, 1.0);
  return KnotVector(std::move(knots));
}

// 0.999 chi-square quantile (Wilson-Hilferty).
inline double chi2_quantile_999(int dof) {
  const double z = 3.0902323061678132;
  const double k = dof;
  const double a = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * a * a * a;
}

}  // namespace rpia::test
