#pragma once

#include <array>

#include "rpia/curve_fitters.hpp"
#include "rpia/types.hpp"

namespace rpia {

// Control net and residual grid, three coordinate slices each. Slice t of
// the residual equals Q_(t) - A P_(t) B on full recomputation.
struct SurfaceFitState {
  Grid3 net;       // (n+1) x (n+1)
  Grid3 residual;  // (m+1) x (p+1)
  long iteration = 0;
  long refresh_period = 1000;

  void refresh_residuals(const CollocationMatrix& a,
                         const CollocationMatrix& bt, const Grid3& q);
};

SurfaceFitState make_surface_state(const CollocationMatrix& a,
                                   const CollocationMatrix& bt, const Grid3& q,
                                   Grid3 net0, long refresh_period = 1000);

struct RpiaSurfaceStepInfo {
  int block_i = 0;
  int block_j = 0;
  std::array<Matrix, 3> delta;  // |I| x |J| per slice
  bool refreshed = false;
};

// One randomized step: draw a column block of A and a row block of B, add
// A_I^T R_(t) B_J^T / (|A_I|_F^2 |B_J|_F^2) to the (I,J) rectangle of each
// slice, update the residual slices incrementally. `bt` is the collocation
// matrix of the second direction, i.e. B transposed.
RpiaSurfaceStepInfo rpia_surface_step(SurfaceFitState& state,
                                      const CollocationMatrix& a,
                                      const CollocationMatrix& bt,
                                      const Grid3& q, BlockSampler& sampler_i,
                                      BlockSampler& sampler_j);

RpiaSurfaceStepInfo rpia_surface_apply_blocks(
    SurfaceFitState& state, const CollocationMatrix& a,
    const CollocationMatrix& bt, const Grid3& q, const BlockPartition& part_i,
    const BlockPartition& part_j, int block_i, int block_j);

// Slice-wise P_(t) += mu A^T R_(t) B^T with a full residual refresh. The
// Kronecker system is never materialized.
void lspia_surface_step(SurfaceFitState& state, const CollocationMatrix& a,
                        const CollocationMatrix& bt, const Grid3& q,
                        double mu);

// Weight for the Kronecker system B^T (x) A, computed from the two Gram
// row-sum vectors: every row sum of the product Gram factors as u_i * w_j.
double surface_weight_lspia(const CollocationMatrix& a,
                            const CollocationMatrix& bt);

// Extreme singular values of B^T (x) A factor as products of the two
// spectra, so no Kronecker SVD is needed.
MlspiaWeights surface_weights_mlspia(const CollocationMatrix& a,
                                     const CollocationMatrix& bt);

class SurfaceSolver {
 public:
  SurfaceSolver(CollocationMatrix a, CollocationMatrix bt, Grid3 q,
                Grid3 net0);

  // Supported methods: rpia and lspia.
  FitReport run(Method method, const FitConfig& config) const;

  const CollocationMatrix& matrix_a() const { return a_; }
  const CollocationMatrix& matrix_bt() const { return bt_; }
  const Grid3& data() const { return q_; }
  const Grid3& initial_net() const { return net0_; }

 private:
  CollocationMatrix a_;
  CollocationMatrix bt_;
  Grid3 q_;
  Grid3 net0_;
  Matrix gram_a_;
  Matrix gram_bt_;
  Vector svals_a_;
  Vector svals_bt_;
};

struct SurfaceProblem {
  Grid3 points;
  std::vector<double> params_x;
  std::vector<double> params_y;
  KnotVector knots_x;
  KnotVector knots_y;
  CollocationMatrix a;
  CollocationMatrix bt;
  Grid3 initial_net;
};

SurfaceProblem make_surface_problem(const Grid3& q, Index n);

FitReport fit_surface(const Grid3& q, Method method, const FitConfig& config);
FitReport rpia_surface_fit(const Grid3& q, const FitConfig& config);

}  // namespace rpia
