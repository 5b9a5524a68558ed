#pragma once

#include <array>

#include "rpia/bspline.hpp"
#include "rpia/types.hpp"

namespace rpia {

enum class StopReason { kTolerance, kIterationCap };

struct StopDecision {
  bool stop = false;
  StopReason reason = StopReason::kTolerance;
};

// Sum over control indices of the Euclidean norms of the rows of g.
double error_numerator_curve(const Matrix& g);

// Same over the (i,j) cells of a slice triple.
double error_numerator_surface(const std::array<Matrix, 3>& g);

// E_k: sum of row norms of A^T r_k over the same quantity at k = 0.
// A zero denominator means the initial fit is already exact.
double relative_error_curve(const CollocationMatrix& a, const Matrix& r_k,
                            const Matrix& r_0);

// Surface E_k from the cellwise norms of A^T R_(t) B^T.
double relative_error_surface(const CollocationMatrix& a,
                              const CollocationMatrix& bt, const Grid3& r_k,
                              const Grid3& r_0);

// Stop once e_k drops below tol or k reaches the cap; tolerance wins ties.
StopDecision should_stop(double e_k, long k, double tol, long cap);

}  // namespace rpia
