#include "rpia/surface_fitters.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "rpia/errors.hpp"
#include "rpia/metrics.hpp"
#include "rpia/parameterization.hpp"

namespace rpia {

namespace {

// Seed offset for the second direction so the two index streams of one run
// stay decorrelated from each other and from the seed ladder seed, seed+1.
constexpr std::uint64_t kSecondDirectionSalt = 0x9e3779b97f4a7c15ULL;

// Union of the nonzero row ranges of the given columns.
CollocationMatrix::ColRange union_range(const CollocationMatrix& m,
                                        const std::vector<Index>& idx) {
  Index first = m.rows();
  Index last = 0;
  for (Index i : idx) {
    const auto r = m.col_range(i);
    if (r.count == 0) continue;
    first = std::min(first, r.first);
    last = std::max(last, r.first + r.count);
  }
  if (last <= first) return {0, 0};
  return {first, last - first};
}

}  // namespace

void SurfaceFitState::refresh_residuals(const CollocationMatrix& a,
                                        const CollocationMatrix& bt,
                                        const Grid3& q) {
  for (int t = 0; t < 3; ++t) {
    // Q_(t) - A P_(t) B, with both collocation products taken bandwise.
    residual.slice[t] =
        q.slice[t] - bt.times(a.times(net.slice[t]).transpose()).transpose();
  }
}

SurfaceFitState make_surface_state(const CollocationMatrix& a,
                                   const CollocationMatrix& bt, const Grid3& q,
                                   Grid3 net0, long refresh_period) {
  if (q.rows() != a.rows() || q.cols() != bt.rows() ||
      net0.rows() != a.cols() || net0.cols() != bt.cols()) {
    throw ArgumentError("state dimensions do not match the system");
  }
  SurfaceFitState state;
  state.net = std::move(net0);
  state.residual.setZero(q.rows(), q.cols());
  state.refresh_period = refresh_period;
  state.refresh_residuals(a, bt, q);
  return state;
}

RpiaSurfaceStepInfo rpia_surface_apply_blocks(
    SurfaceFitState& state, const CollocationMatrix& a,
    const CollocationMatrix& bt, const Grid3& q, const BlockPartition& part_i,
    const BlockPartition& part_j, int block_i, int block_j) {
  const auto& idx_i = part_i.blocks.at(block_i);
  const auto& idx_j = part_j.blocks.at(block_j);
  const auto ni = static_cast<Index>(idx_i.size());
  const auto nj = static_cast<Index>(idx_j.size());

  RpiaSurfaceStepInfo info;
  info.block_i = block_i;
  info.block_j = block_j;
  for (auto& d : info.delta) d = Matrix::Zero(ni, nj);

  double mass_a = 0.0;
  for (Index i : idx_i) mass_a += a.col_sq_norm(i);
  double mass_b = 0.0;
  for (Index j : idx_j) mass_b += bt.col_sq_norm(j);

  if (mass_a > 0.0 && mass_b > 0.0) {
    const double scale = 1.0 / (mass_a * mass_b);
    const auto rows_a = union_range(a, idx_i);

    for (int t = 0; t < 3; ++t) {
      const Matrix& r = state.residual.slice[t];

      // s = R_(t) B_J^T restricted to the rows the A block can see.
      Matrix s = Matrix::Zero(rows_a.count, nj);
      for (Index tj = 0; tj < nj; ++tj) {
        const auto rb = bt.col_range(idx_j[tj]);
        if (rb.count == 0) continue;
        s.col(tj).noalias() =
            r.block(rows_a.first, rb.first, rows_a.count, rb.count) *
            bt.values().col(idx_j[tj]).segment(rb.first, rb.count);
      }
      // delta = A_I^T s / (|A_I|^2 |B_J|^2).
      for (Index ti = 0; ti < ni; ++ti) {
        const auto ra = a.col_range(idx_i[ti]);
        if (ra.count == 0) continue;
        info.delta[t].row(ti).noalias() =
            a.values().col(idx_i[ti]).segment(ra.first, ra.count).transpose() *
            s.middleRows(ra.first - rows_a.first, ra.count);
      }
      info.delta[t] *= scale;
    }

    // Control rectangle and residual update, residual by the same bands.
    for (int t = 0; t < 3; ++t) {
      for (Index ti = 0; ti < ni; ++ti) {
        for (Index tj = 0; tj < nj; ++tj) {
          state.net.slice[t](idx_i[ti], idx_j[tj]) += info.delta[t](ti, tj);
        }
      }
      Matrix u = Matrix::Zero(rows_a.count, nj);  // A_I delta
      for (Index ti = 0; ti < ni; ++ti) {
        const auto ra = a.col_range(idx_i[ti]);
        if (ra.count == 0) continue;
        u.middleRows(ra.first - rows_a.first, ra.count).noalias() +=
            a.values().col(idx_i[ti]).segment(ra.first, ra.count) *
            info.delta[t].row(ti);
      }
      for (Index tj = 0; tj < nj; ++tj) {
        const auto rb = bt.col_range(idx_j[tj]);
        if (rb.count == 0) continue;
        state.residual.slice[t]
            .block(rows_a.first, rb.first, rows_a.count, rb.count)
            .noalias() -= u.col(tj) * bt.values()
                                          .col(idx_j[tj])
                                          .segment(rb.first, rb.count)
                                          .transpose();
      }
    }
  }

  ++state.iteration;
  if (state.refresh_period > 0 &&
      state.iteration % state.refresh_period == 0) {
    state.refresh_residuals(a, bt, q);
    info.refreshed = true;
  }
  return info;
}

RpiaSurfaceStepInfo rpia_surface_step(SurfaceFitState& state,
                                      const CollocationMatrix& a,
                                      const CollocationMatrix& bt,
                                      const Grid3& q, BlockSampler& sampler_i,
                                      BlockSampler& sampler_j) {
  const int bi = sampler_i.sample();
  const int bj = sampler_j.sample();
  return rpia_surface_apply_blocks(state, a, bt, q, sampler_i.partition(),
                                   sampler_j.partition(), bi, bj);
}

void lspia_surface_step(SurfaceFitState& state, const CollocationMatrix& a,
                        const CollocationMatrix& bt, const Grid3& q,
                        double mu) {
  for (int t = 0; t < 3; ++t) {
    state.net.slice[t].noalias() +=
        mu * (a.transpose_times(state.residual.slice[t]) * bt.values());
  }
  state.refresh_residuals(a, bt, q);
  ++state.iteration;
}

namespace {

double max_pair_product(const Vector& u, const Vector& w) {
  const double cands[] = {
      u.maxCoeff() * w.maxCoeff(), u.maxCoeff() * w.minCoeff(),
      u.minCoeff() * w.maxCoeff(), u.minCoeff() * w.minCoeff()};
  return *std::max_element(std::begin(cands), std::end(cands));
}

}  // namespace

double surface_weight_lspia(const CollocationMatrix& a,
                            const CollocationMatrix& bt) {
  // Row i*j of the Kronecker Gram sums to u_i * w_j, so the maximum over
  // the product grid comes from the extreme values of the two factors.
  const Vector u = a.gram().rowwise().sum();
  const Vector w = bt.gram().rowwise().sum();
  const double c_max = max_pair_product(u, w);
  if (c_max <= 0.0) throw ConfigError("Gram row sums are not positive");
  return 2.0 / c_max;
}

MlspiaWeights surface_weights_mlspia(const CollocationMatrix& a,
                                     const CollocationMatrix& bt) {
  const Vector sa = singular_values(a.values());
  const Vector sb = singular_values(bt.values());
  if (!rank_full_from_singular_values(sa, a.cols()) ||
      !rank_full_from_singular_values(sb, bt.cols())) {
    throw ConfigError("collocation matrices are rank deficient");
  }
  const double s1 = sa[0] * sb[0];
  const double sr = sa[sa.size() - 1] * sb[sb.size() - 1];
  MlspiaWeights w;
  w.omega = 4.0 * s1 * sr / ((s1 + sr) * (s1 + sr));
  w.gamma = w.omega;
  w.v = 1.0 / (s1 * sr);
  return w;
}

SurfaceSolver::SurfaceSolver(CollocationMatrix a, CollocationMatrix bt,
                             Grid3 q, Grid3 net0)
    : a_(std::move(a)), bt_(std::move(bt)), q_(std::move(q)),
      net0_(std::move(net0)) {
  if (a_.cols() != bt_.cols()) {
    throw ArgumentError("control net must be square");
  }
  if (q_.rows() != a_.rows() || q_.cols() != bt_.rows() ||
      net0_.rows() != a_.cols() || net0_.cols() != bt_.cols()) {
    throw ArgumentError("system dimensions do not match");
  }
  if (a_.rows() < a_.cols() || bt_.rows() < bt_.cols()) {
    throw ConfigError("more control points than data points");
  }
  gram_a_ = a_.gram();
  gram_bt_ = bt_.gram();
  svals_a_ = singular_values(a_.values());
  svals_bt_ = singular_values(bt_.values());
  if (!rank_full_from_singular_values(svals_a_, a_.cols()) ||
      !rank_full_from_singular_values(svals_bt_, bt_.cols())) {
    throw ConfigError("collocation matrix is rank deficient");
  }
}

FitReport SurfaceSolver::run(Method method, const FitConfig& config) const {
  if (method != Method::kRpia && method != Method::kLspia) {
    throw ConfigError("surface fitting supports rpia and lspia only");
  }
  const auto t_start = std::chrono::steady_clock::now();

  SurfaceFitState state =
      make_surface_state(a_, bt_, q_, net0_, config.refresh_period);

  FitReport report;
  report.method = method_name(method);
  report.m = a_.rows() - 1;
  report.n = a_.cols() - 1;
  report.p = bt_.rows() - 1;
  report.dim = 3;
  report.seed = config.seed;

  // g_t = A^T R_(t) B^T, maintained alongside the residual.
  std::array<Matrix, 3> g;
  auto recompute_g = [&] {
    for (int t = 0; t < 3; ++t) {
      g[t].noalias() =
          a_.transpose_times(state.residual.slice[t]) * bt_.values();
    }
  };
  recompute_g();
  const double denom = error_numerator_surface(g);
  if (denom == 0.0) {
    throw DegenerateDataError("initial fit is already exact");
  }
  report.errors.push_back(1.0);

  std::optional<BlockSampler> sampler_i;
  std::optional<BlockSampler> sampler_j;
  double mu = 0.0;
  if (method == Method::kRpia) {
    if (config.tau < 1) throw ConfigError("rpia requires a block size");
    report.tau = config.tau;
    sampler_i.emplace(BlockSampler::from_collocation(
        a_, uniform_partition(a_.cols(), config.tau), config.seed));
    sampler_j.emplace(BlockSampler::from_collocation(
        bt_, uniform_partition(bt_.cols(), config.tau),
        config.seed ^ kSecondDirectionSalt));
  } else {
    mu = config.mu_tilde.value_or(surface_weight_lspia(a_, bt_));
  }

  while (true) {
    const StopDecision decision = should_stop(
        report.errors.back(), state.iteration, config.tol,
        config.max_iterations);
    if (decision.stop) {
      report.reason = decision.reason;
      break;
    }
    if (method == Method::kRpia) {
      const RpiaSurfaceStepInfo info =
          rpia_surface_step(state, a_, bt_, q_, *sampler_i, *sampler_j);
      if (info.refreshed) {
        recompute_g();
      } else {
        const auto& idx_i = sampler_i->partition().blocks[info.block_i];
        const auto& idx_j = sampler_j->partition().blocks[info.block_j];
        Matrix left(gram_a_.rows(), static_cast<Index>(idx_i.size()));
        for (std::size_t t = 0; t < idx_i.size(); ++t) {
          left.col(static_cast<Index>(t)) = gram_a_.col(idx_i[t]);
        }
        Matrix right(static_cast<Index>(idx_j.size()), gram_bt_.cols());
        for (std::size_t t = 0; t < idx_j.size(); ++t) {
          right.row(static_cast<Index>(t)) = gram_bt_.row(idx_j[t]);
        }
        for (int t = 0; t < 3; ++t) {
          g[t].noalias() -= left * (info.delta[t] * right);
        }
      }
    } else {
      lspia_surface_step(state, a_, bt_, q_, mu);
      recompute_g();
    }
    report.errors.push_back(error_numerator_surface(g) / denom);
  }

  report.iterations = state.iteration;
  report.control_net = state.net;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return report;
}

SurfaceProblem make_surface_problem(const Grid3& q, Index n) {
  auto [px, py] = chord_params_surface(q);
  KnotVector kx = build_knot_vector(px, n);
  KnotVector ky = build_knot_vector(py, n);
  CollocationMatrix a = collocation(kx, px);
  CollocationMatrix bt = collocation(ky, py);
  Grid3 net0 = init_controls_surface(q, n);
  return SurfaceProblem{q,
                        std::move(px),
                        std::move(py),
                        std::move(kx),
                        std::move(ky),
                        std::move(a),
                        std::move(bt),
                        std::move(net0)};
}

FitReport fit_surface(const Grid3& q, Method method, const FitConfig& config) {
  SurfaceProblem problem = make_surface_problem(q, config.n);
  SurfaceSolver solver(std::move(problem.a), std::move(problem.bt), q,
                       std::move(problem.initial_net));
  return solver.run(method, config);
}

FitReport rpia_surface_fit(const Grid3& q, const FitConfig& config) {
  return fit_surface(q, Method::kRpia, config);
}

}  // namespace rpia
