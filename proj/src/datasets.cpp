#include "rpia/datasets.hpp"

#include <cmath>

#include "rpia/errors.hpp"

namespace rpia {

namespace {

constexpr double kPi = 3.14159265358979323846;

double lerp_param(double lo, double hi, Index k, Index count) {
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count);
}

}  // namespace

Matrix gen_curve(int example_id, Index m) {
  if (m < 1) throw ArgumentError("need m >= 1");
  switch (example_id) {
    case 1: {  // rose, r = sin(theta/4)
      Matrix pts(m + 1, 2);
      for (Index j = 0; j <= m; ++j) {
        const double theta = lerp_param(0.0, 8.0 * kPi, j, m);
        const double r = std::sin(theta / 4.0);
        pts(j, 0) = r * std::cos(theta);
        pts(j, 1) = r * std::sin(theta);
      }
      return pts;
    }
    case 2: {  // blob, r = 1 + 2cos(2t + 1/2) + 2cos(3t + 1/2)
      Matrix pts(m + 1, 2);
      for (Index j = 0; j <= m; ++j) {
        const double theta = lerp_param(0.0, 2.0 * kPi, j, m);
        const double r = 1.0 + 2.0 * std::cos(2.0 * theta + 0.5) +
                         2.0 * std::cos(3.0 * theta + 0.5);
        pts(j, 0) = r * std::cos(theta);
        pts(j, 1) = r * std::sin(theta);
      }
      return pts;
    }
    case 3: {  // helix
      Matrix pts(m + 1, 3);
      for (Index j = 0; j <= m; ++j) {
        const double t = lerp_param(-10.0 * kPi, 10.0 * kPi, j, m);
        pts(j, 0) = 10.0 * std::cos(t * kPi / 3.0);
        pts(j, 1) = 10.0 * std::sin(t * kPi / 3.0);
        pts(j, 2) = t * kPi / 3.0;
      }
      return pts;
    }
    case 4: {  // granny knot
      Matrix pts(m + 1, 3);
      for (Index j = 0; j <= m; ++j) {
        const double t = lerp_param(0.0, 2.0 * kPi, j, m);
        pts(j, 0) = -22.0 * std::cos(t) - 128.0 * std::sin(t) -
                    44.0 * std::cos(3.0 * t) - 78.0 * std::sin(3.0 * t);
        pts(j, 1) = -10.0 * std::cos(2.0 * t) - 27.0 * std::sin(2.0 * t) +
                    38.0 * std::cos(4.0 * t) + 46.0 * std::sin(4.0 * t);
        pts(j, 2) = 70.0 * std::cos(3.0 * t) - 40.0 * std::sin(3.0 * t);
      }
      return pts;
    }
    default:
      throw ArgumentError("curve example id must be 1, 2, 3, or 4");
  }
}

Grid3 gen_surface(int example_id, Index m, Index p) {
  if (m < 1 || p < 1) throw ArgumentError("need m, p >= 1");
  Grid3 grid(m + 1, p + 1);
  for (Index h = 0; h <= m; ++h) {
    for (Index l = 0; l <= p; ++l) {
      double x = 0.0;
      double y = 0.0;
      double z = 0.0;
      switch (example_id) {
        case 5: {  // boy surface
          const double t = lerp_param(-kPi, kPi, h, m);
          const double s = lerp_param(-kPi, kPi, l, p);
          const double den =
              std::sqrt(2.0) - std::sin(2.0 * t) * std::sin(3.0 * s);
          if (std::abs(den) < 1e-9) {
            throw ConfigError("sample hits the boy-surface singularity");
          }
          const double ct = std::cos(t);
          x = 2.0 / 3.0 *
              (ct * std::cos(2.0 * t) +
               std::sqrt(2.0) * std::sin(t) * std::cos(s)) *
              ct / den;
          y = 2.0 / 3.0 *
              (ct * std::sin(2.0 * t) -
               std::sqrt(2.0) * std::sin(t) * std::sin(s)) *
              ct / den;
          z = std::sqrt(2.0) * ct * ct / den;
          break;
        }
        case 6: {  // tranguloid trefoil
          const double t = lerp_param(-kPi, kPi, h, m);
          const double s = lerp_param(-kPi, kPi, l, p);
          x = 2.0 * std::sin(3.0 * t) / (2.0 + std::cos(s));
          y = 2.0 * (std::sin(t) + 2.0 * std::sin(2.0 * t)) /
              (2.0 + std::cos(s + 2.0 * kPi / 3.0));
          z = (std::cos(t) - 2.0 * std::cos(2.0 * t)) * (2.0 + std::cos(s)) *
              (2.0 + std::cos(s + 2.0 * kPi / 3.0)) / 4.0;
          break;
        }
        case 7: {  // Verrill minimal surface
          const double t = lerp_param(0.5, 1.0, h, m);
          const double s = lerp_param(0.0, 2.0 * kPi, l, p);
          x = -2.0 * t * std::cos(s) + 2.0 * std::cos(s) / t -
              2.0 * t * t * t * std::cos(3.0 * s) / 3.0;
          y = 6.0 * t * std::sin(s) - 2.0 * std::sin(s) / t -
              2.0 * t * t * t * std::sin(3.0 * s) / 3.0;
          z = 4.0 * std::log(t);
          break;
        }
        case 8: {  // bent horns
          const double t = lerp_param(-kPi, kPi, h, m);
          const double s = lerp_param(-2.0 * kPi, 2.0 * kPi, l, p);
          x = (2.0 + std::cos(t)) * (s / 3.0 - std::sin(s));
          y = (2.0 + std::cos(t - 2.0 * kPi / 3.0)) * (std::cos(s) - 1.0);
          z = (2.0 + std::cos(t + 2.0 * kPi / 3.0)) * (std::cos(s) - 1.0);
          break;
        }
        default:
          throw ArgumentError("surface example id must be 5, 6, 7, or 8");
      }
      grid.set(h, l, {x, y, z});
    }
  }
  return grid;
}

}  // namespace rpia
