#pragma once

#include "rpia/bspline.hpp"
#include "rpia/types.hpp"

namespace rpia {

// Direct least-squares solution of A p = q via a rank-revealing orthogonal
// factorization; verifies the normal-equation residual before returning.
// Deliberately a different computational path than any iterative fitter.
Matrix least_squares_curve(const CollocationMatrix& a, const Matrix& q);

// Two-sided solve per slice: P_(t) = (A^T A)^-1 A^T Q_(t) B^T (B B^T)^-1.
Grid3 least_squares_surface(const CollocationMatrix& a,
                            const CollocationMatrix& bt, const Grid3& q);

// I - A A^T / |A|_F^2, the operator governing the mean iterate sequence.
Matrix expected_iteration_matrix(const CollocationMatrix& a);

// rho(I - A^T A / |A|_F^2); strictly below 1 exactly when A has full
// column rank.
double spectral_radius_check(const CollocationMatrix& a);

}  // namespace rpia
