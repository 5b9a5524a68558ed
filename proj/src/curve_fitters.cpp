#include "rpia/curve_fitters.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "rpia/errors.hpp"
#include "rpia/parameterization.hpp"

namespace rpia {

std::string method_name(Method m) {
  switch (m) {
    case Method::kRpia:
      return "rpia";
    case Method::kLspia:
      return "lspia";
    case Method::kSlspia:
      return "slspia";
    case Method::kMlspia:
      return "mlspia";
  }
  throw ArgumentError("unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "rpia") return Method::kRpia;
  if (name == "lspia") return Method::kLspia;
  if (name == "slspia") return Method::kSlspia;
  if (name == "mlspia") return Method::kMlspia;
  throw ArgumentError("unknown method: " + name);
}

void CurveFitState::refresh_residuals(const CollocationMatrix& a,
                                      const Matrix& q) {
  residuals = q - a.times(controls);
}

CurveFitState make_curve_state(const CollocationMatrix& a, const Matrix& q,
                               Matrix controls0, long refresh_period) {
  if (q.rows() != a.rows() || controls0.rows() != a.cols() ||
      controls0.cols() != q.cols()) {
    throw ArgumentError("state dimensions do not match the system");
  }
  CurveFitState state;
  state.controls = std::move(controls0);
  state.refresh_period = refresh_period;
  state.refresh_residuals(a, q);
  return state;
}

RpiaStepInfo rpia_curve_apply_block(CurveFitState& state,
                                    const CollocationMatrix& a,
                                    const Matrix& q,
                                    const BlockPartition& part, int block) {
  const auto& idx = part.blocks.at(block);
  const Index d = state.residuals.cols();

  RpiaStepInfo info;
  info.block = block;
  info.delta = Matrix::Zero(static_cast<Index>(idx.size()), d);

  double mass = 0.0;
  for (Index i : idx) mass += a.col_sq_norm(i);

  if (mass > 0.0) {
    // All adjusting vectors come from the residual of this iteration.
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const auto [first, count] = a.col_range(idx[t]);
      if (count > 0) {
        info.delta.row(static_cast<Index>(t)).noalias() =
            a.values().col(idx[t]).segment(first, count).transpose() *
            state.residuals.middleRows(first, count);
      }
    }
    info.delta /= mass;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      state.controls.row(idx[t]) += info.delta.row(static_cast<Index>(t));
    }
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const auto [first, count] = a.col_range(idx[t]);
      if (count > 0) {
        state.residuals.middleRows(first, count).noalias() -=
            a.values().col(idx[t]).segment(first, count) *
            info.delta.row(static_cast<Index>(t));
      }
    }
  }

  ++state.iteration;
  if (state.refresh_period > 0 &&
      state.iteration % state.refresh_period == 0) {
    state.refresh_residuals(a, q);
    info.refreshed = true;
  }
  return info;
}

RpiaStepInfo rpia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                             const Matrix& q, BlockSampler& sampler) {
  const int block = sampler.sample();
  return rpia_curve_apply_block(state, a, q, sampler.partition(), block);
}

namespace {

double lspia_weight_from_gram(const Matrix& gram) {
  const double c_max = gram.rowwise().sum().maxCoeff();
  if (c_max <= 0.0) throw ConfigError("Gram row sums are not positive");
  return 2.0 / c_max;
}

double slspia_weight_from_gram(const Matrix& gram) {
  const Vector row_sums = gram.rowwise().sum();
  const double c_max = (gram * row_sums).maxCoeff();
  if (c_max <= 0.0) throw ConfigError("Gram row sums are not positive");
  return 2.0 / c_max;
}

MlspiaWeights mlspia_weights_from_svals(const Vector& svals, Index cols) {
  if (!rank_full_from_singular_values(svals, cols)) {
    throw ConfigError("smallest singular value vanishes");
  }
  const double s1 = svals[0];
  const double sr = svals[svals.size() - 1];
  MlspiaWeights w;
  w.omega = 4.0 * s1 * sr / ((s1 + sr) * (s1 + sr));
  w.gamma = w.omega;
  w.v = 1.0 / (s1 * sr);
  return w;
}

}  // namespace

double lspia_weight(const CollocationMatrix& a) {
  return lspia_weight_from_gram(a.gram());
}

double slspia_weight(const CollocationMatrix& a) {
  return slspia_weight_from_gram(a.gram());
}

MlspiaWeights mlspia_weights(const CollocationMatrix& a) {
  return mlspia_weights_from_svals(singular_values(a.values()), a.cols());
}

void lspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                      const Matrix& q, double mu) {
  state.controls.noalias() += mu * a.transpose_times(state.residuals);
  state.refresh_residuals(a, q);
  ++state.iteration;
}

void init_schulz_carry(CurveFitState& state, const CollocationMatrix& a,
                       double mu_hat) {
  state.schulz.noalias() = mu_hat * (a.gram() * a.values().transpose());
}

void slspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                       const Matrix& q) {
  if (state.schulz.size() == 0) {
    throw ArgumentError("Schulz carry not initialized");
  }
  state.controls.noalias() += state.schulz * state.residuals;
  state.refresh_residuals(a, q);
  const Matrix za = state.schulz * a.values();
  state.schulz = 2.0 * state.schulz - za * state.schulz;
  ++state.iteration;
}

void mlspia_curve_step(CurveFitState& state, const CollocationMatrix& a,
                       const Matrix& q, const MlspiaWeights& w) {
  const Matrix delta_bar = w.v * a.transpose_times(state.residuals);
  Matrix delta;
  if (state.delta_prev.size() == 0) {
    delta = w.gamma * delta_bar;
  } else {
    delta = (1.0 - w.omega) * state.delta_prev + w.gamma * delta_bar +
            (w.omega - w.gamma) * state.delta_bar_prev;
  }
  state.controls += delta;
  state.refresh_residuals(a, q);
  state.delta_prev = std::move(delta);
  state.delta_bar_prev = delta_bar;
  ++state.iteration;
}

CurveSolver::CurveSolver(CollocationMatrix a, Matrix q, Matrix controls0)
    : a_(std::move(a)), q_(std::move(q)), p0_(std::move(controls0)) {
  if (q_.rows() != a_.rows() || p0_.rows() != a_.cols() ||
      p0_.cols() != q_.cols()) {
    throw ArgumentError("system dimensions do not match");
  }
  if (a_.rows() < a_.cols()) {
    throw ConfigError("more control points than data points");
  }
  gram_ = a_.gram();
  svals_ = singular_values(a_.values());
  if (!rank_full_from_singular_values(svals_, a_.cols())) {
    throw ConfigError("collocation matrix is rank deficient");
  }
}

FitReport CurveSolver::run(Method method, const FitConfig& config) const {
  const auto t_start = std::chrono::steady_clock::now();

  CurveFitState state =
      make_curve_state(a_, q_, p0_, config.refresh_period);

  FitReport report;
  report.method = method_name(method);
  report.m = a_.rows() - 1;
  report.n = a_.cols() - 1;
  report.dim = static_cast<int>(q_.cols());
  report.seed = config.seed;

  // Basis-weighted residual aggregate A^T r, kept in sync with the state.
  Matrix g = a_.transpose_times(state.residuals);
  const double denom = error_numerator_curve(g);
  if (denom == 0.0) {
    throw DegenerateDataError("initial fit is already exact");
  }
  report.errors.push_back(1.0);

  std::optional<BlockSampler> sampler;
  double mu = 0.0;
  MlspiaWeights weights;
  switch (method) {
    case Method::kRpia: {
      if (config.tau < 1) throw ConfigError("rpia requires a block size");
      report.tau = config.tau;
      sampler.emplace(BlockSampler::from_collocation(
          a_, uniform_partition(a_.cols(), config.tau), config.seed));
      break;
    }
    case Method::kLspia:
      mu = config.mu_tilde.value_or(lspia_weight_from_gram(gram_));
      break;
    case Method::kSlspia:
      mu = config.mu_hat.value_or(slspia_weight_from_gram(gram_));
      state.schulz.noalias() = mu * (gram_ * a_.values().transpose());
      break;
    case Method::kMlspia: {
      MlspiaWeights defaults{};
      if (!config.omega || !config.gamma || !config.v) {
        defaults = mlspia_weights_from_svals(svals_, a_.cols());
      }
      weights.omega = config.omega.value_or(defaults.omega);
      weights.gamma = config.gamma.value_or(defaults.gamma);
      weights.v = config.v.value_or(defaults.v);
      break;
    }
  }

  while (true) {
    const StopDecision decision = should_stop(
        report.errors.back(), state.iteration, config.tol,
        config.max_iterations);
    if (decision.stop) {
      report.reason = decision.reason;
      break;
    }
    switch (method) {
      case Method::kRpia: {
        const RpiaStepInfo info = rpia_curve_step(state, a_, q_, *sampler);
        if (info.refreshed) {
          g = a_.transpose_times(state.residuals);
        } else {
          const auto& idx = sampler->partition().blocks[info.block];
          for (std::size_t t = 0; t < idx.size(); ++t) {
            g.noalias() -=
                gram_.col(idx[t]) * info.delta.row(static_cast<Index>(t));
          }
        }
        break;
      }
      case Method::kLspia:
        lspia_curve_step(state, a_, q_, mu);
        g = a_.transpose_times(state.residuals);
        break;
      case Method::kSlspia:
        slspia_curve_step(state, a_, q_);
        g = a_.transpose_times(state.residuals);
        break;
      case Method::kMlspia:
        mlspia_curve_step(state, a_, q_, weights);
        g = a_.transpose_times(state.residuals);
        break;
    }
    report.errors.push_back(error_numerator_curve(g) / denom);
  }

  report.iterations = state.iteration;
  report.controls = state.controls;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return report;
}

CurveProblem make_curve_problem(const Matrix& q, Index n) {
  std::vector<double> params = chord_params_curve(q);
  KnotVector knots = build_knot_vector(params, n);
  CollocationMatrix a = collocation(knots, params);
  Matrix controls0 = init_controls_curve(q, n);
  return CurveProblem{q, std::move(params), std::move(knots), std::move(a),
                      std::move(controls0)};
}

FitReport fit_curve(const Matrix& q, Method method, const FitConfig& config) {
  CurveProblem problem = make_curve_problem(q, config.n);
  CurveSolver solver(std::move(problem.a), q,
                     std::move(problem.initial_controls));
  return solver.run(method, config);
}

FitReport rpia_curve_fit(const Matrix& q, const FitConfig& config) {
  return fit_curve(q, Method::kRpia, config);
}

}  // namespace rpia
