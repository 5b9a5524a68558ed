#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpia/bspline.hpp"
#include "rpia/metrics.hpp"
#include "rpia/partition.hpp"
#include "rpia/types.hpp"

namespace rpia {

enum class Method { kRpia, kLspia, kSlspia, kMlspia };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// Shared iteration state. `controls` is (n+1) x d, `residuals` (m+1) x d.
// The Schulz matrix and the momentum carries stay empty until the
// corresponding method initializes them.
struct CurveFitState {
  Matrix controls;
  Matrix residuals;
  long iteration = 0;
  long refresh_period = 1000;

  Matrix schulz;          // (n+1) x (m+1)
  Matrix delta_prev;      // previous adjusting vectors
  Matrix delta_bar_prev;  // previous momentum input

  void refresh_residuals(const CollocationMatrix& a, const Matrix& q);
};

CurveFitState make_curve_state(const CollocationMatrix& a, const Matrix& q,
                               Matrix controls0, long refresh_period = 1000);

struct RpiaStepInfo {
  int block = 0;
  Matrix delta;  // one row per index of the block, d columns
  bool refreshed = false;
};

// One randomized step: draw a block, shift its control points by
// delta = A_I^T r / |A_I|_F^2, update the residuals incrementally.
// Every refresh_period iterations the residuals are recomputed from the
// controls to cap floating-point drift.
RpiaStepInfo rpia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                             const Matrix& q, BlockSampler& sampler);

// Deterministic core of the step with the block chosen by the caller.
RpiaStepInfo rpia_curve_apply_block(CurveFitState& state,
                                    const CollocationMatrix& a,
                                    const Matrix& q,
                                    const BlockPartition& part, int block);

// Global baselines. Each updates every control point and refreshes the
// residuals from scratch.
void lspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                      const Matrix& q, double mu);

// mu_tilde = 2 / max row sum of A^T A.
double lspia_weight(const CollocationMatrix& a);

// mu_hat = 2 / max row sum of (A^T A)^2.
double slspia_weight(const CollocationMatrix& a);

// Installs Z^(0) = mu_hat * A^T A A^T.
void init_schulz_carry(CurveFitState& state, const CollocationMatrix& a,
                       double mu_hat);

// Adjust by Z^(k) r^(k), then advance Z one Schulz step.
void slspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                       const Matrix& q);

struct MlspiaWeights {
  double omega = 1.0;
  double gamma = 1.0;
  double v = 1.0;
};

// omega = gamma = 4 s1 sr / (s1 + sr)^2, v = 1 / (s1 sr) from the extreme
// singular values.
MlspiaWeights mlspia_weights(const CollocationMatrix& a);

// Momentum step. The first call (empty carries) uses delta = gamma *
// delta_bar, which makes the omega = gamma = 1 case coincide with LSPIA
// from the very first iteration.
void mlspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                       const Matrix& q, const MlspiaWeights& w);

struct FitConfig {
  Index n = -1;  // control count - 1; required by the protocol entry points
  int tau = 0;   // block size (rpia only)
  std::uint64_t seed = 0;
  double tol = 1e-6;
  long max_iterations = 10000;
  long refresh_period = 1000;
  // Optional weight overrides; defaults come from the matrix.
  std::optional<double> mu_tilde;
  std::optional<double> mu_hat;
  std::optional<double> omega;
  std::optional<double> gamma;
  std::optional<double> v;
};

struct FitReport {
  std::string method;
  Index m = 0;
  Index n = 0;
  Index p = -1;  // second grid direction; -1 for curves
  int dim = 0;
  int tau = 0;
  std::uint64_t seed = 0;
  std::vector<double> errors;  // E_0 .. E_K
  long iterations = 0;
  StopReason reason = StopReason::kTolerance;
  Matrix controls;    // curves
  Grid3 control_net;  // surfaces
  double wall_ms = 0.0;

  double final_error() const { return errors.back(); }
  bool is_surface() const { return p >= 0; }
};

// Owns the assembled system and amortizes the rank check, Gram matrix, and
// singular values across seeded runs.
class CurveSolver {
 public:
  CurveSolver(CollocationMatrix a, Matrix q, Matrix controls0);

  FitReport run(Method method, const FitConfig& config) const;

  const CollocationMatrix& matrix() const { return a_; }
  const Matrix& data() const { return q_; }
  const Matrix& initial_controls() const { return p0_; }
  const Matrix& gram() const { return gram_; }
  const Vector& svals() const { return svals_; }

 private:
  CollocationMatrix a_;
  Matrix q_;
  Matrix p0_;
  Matrix gram_;
  Vector svals_;
};

// Full protocol assembly: chord parameters, knot vector, collocation
// matrix, subsampled initial controls.
struct CurveProblem {
  Matrix points;
  std::vector<double> params;
  KnotVector knots;
  CollocationMatrix a;
  Matrix initial_controls;
};

CurveProblem make_curve_problem(const Matrix& q, Index n);

FitReport fit_curve(const Matrix& q, Method method, const FitConfig& config);
FitReport rpia_curve_fit(const Matrix& q, const FitConfig& config);

}  // namespace rpia
