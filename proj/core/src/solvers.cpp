#include "relbell/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "relbell/errors.hpp"
#include "relbell/kinematics.hpp"

namespace relbell {

namespace {

constexpr std::size_t kDim = 4;
using Point = std::array<double, kDim>;

struct SimplexOutcome {
  Point best{};
  double value = 0.0;
  int iterations = 0;
};

// Plain Nelder-Mead minimization with the standard coefficients.
SimplexOutcome nelder_mead(const std::function<double(const Point&)>& f, const Point& start,
                           double step, int max_iter, double ftol, double xtol) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::array<Point, kDim + 1> x{};
  std::array<double, kDim + 1> fx{};
  x[0] = start;
  for (std::size_t i = 0; i < kDim; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= kDim; ++i) {
    fx[i] = f(x[i]);
  }

  auto affine = [](const Point& c, const Point& p, double t) {
    Point out;
    for (std::size_t i = 0; i < kDim; ++i) {
      out[i] = c[i] + t * (p[i] - c[i]);
    }
    return out;
  };

  int iter = 0;
  std::array<std::size_t, kDim + 1> order{};
  for (; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i <= kDim; ++i) {
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    {
      std::array<Point, kDim + 1> xs;
      std::array<double, kDim + 1> fs;
      for (std::size_t i = 0; i <= kDim; ++i) {
        xs[i] = x[order[i]];
        fs[i] = fx[order[i]];
      }
      x = xs;
      fx = fs;
    }

    double diameter = 0.0;
    for (std::size_t i = 1; i <= kDim; ++i) {
      for (std::size_t d = 0; d < kDim; ++d) {
        diameter = std::max(diameter, std::abs(x[i][d] - x[0][d]));
      }
    }
    if (fx[kDim] - fx[0] <= ftol && diameter <= xtol) {
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i < kDim; ++i) {
      for (std::size_t d = 0; d < kDim; ++d) {
        centroid[d] += x[i][d] / static_cast<double>(kDim);
      }
    }

    const Point xr = affine(centroid, x[kDim], -kReflect);
    const double fr = f(xr);
    if (fr < fx[0]) {
      const Point xe = affine(centroid, xr, kExpand);
      const double fe = f(xe);
      if (fe < fr) {
        x[kDim] = xe;
        fx[kDim] = fe;
      } else {
        x[kDim] = xr;
        fx[kDim] = fr;
      }
      continue;
    }
    if (fr < fx[kDim - 1]) {
      x[kDim] = xr;
      fx[kDim] = fr;
      continue;
    }
    if (fr < fx[kDim]) {
      const Point xc = affine(centroid, xr, kContract);
      const double fc = f(xc);
      if (fc <= fr) {
        x[kDim] = xc;
        fx[kDim] = fc;
        continue;
      }
    } else {
      const Point xc = affine(centroid, x[kDim], kContract);
      const double fc = f(xc);
      if (fc < fx[kDim]) {
        x[kDim] = xc;
        fx[kDim] = fc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= kDim; ++i) {
      x[i] = affine(x[0], x[i], kShrink);
      fx[i] = f(x[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(fx.begin(), fx.end()) - fx.begin());
  return {x[best], fx[best], iter};
}

// splitmix64; fixed arithmetic so the sequence is the same on every platform.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : state_(seed) {}

  double uniform() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

Vec3 direction(double theta, double phi) { return from_spherical(1.0, theta, phi); }

}  // namespace

OptimizationResult optimize_directions(const Vec3& a1, const Vec3& a2, const Vec3& v_com,
                                       const FrameConfig& frame, const OptimizeOptions& options) {
  detail::require_subluminal(v_com, "optimize_directions");
  frame.validate();
  if (!(options.tol > 0.0)) {
    throw PreconditionError("optimize_directions: tol must be positive");
  }
  if (options.starts < 1 || options.max_iter < 1) {
    throw PreconditionError("optimize_directions: starts and max_iter must be positive");
  }
  const RestFrameMap map = frame.is_rest() ? RestFrameMap::closed_form : RestFrameMap::composed;

  std::function<double(const Point&)> objective;
  if (options.cone) {
    options.cone->validate();
    options.quad.validate();
    const MomentumShell shell{norm(v_com), 1.0};
    shell.validate();
    objective = [=](const Point& p) {
      const ChshSettings settings{a1, a2, direction(p[0], p[1]), direction(p[2], p[3])};
      const ConeAverage avg = cone_average(settings, shell, frame, *options.cone, options.quad, map);
      return -(options.objective == ConeObjective::literal ? avg.literal : avg.correlator);
    };
  } else {
    objective = [=](const Point& p) {
      const ChshSettings settings{a1, a2, direction(p[0], p[1]), direction(p[2], p[3])};
      return -ChshEvaluator(settings, frame, map).s(v_com);
    };
  }

  constexpr double kFtol = 1e-15;
  constexpr double kXtol = 1e-9;
  constexpr int kMaxRounds = 64;

  SeededStream rng(options.seed);
  Point best_point{};
  double best = -std::numeric_limits<double>::infinity();
  OptimizationResult result;

  for (int round = 0; round < kMaxRounds && result.iterations < options.max_iter; ++round) {
    const double before = best;
    const double spread = 0.5 * std::pow(0.5, round);
    for (int s = 0; s < options.starts && result.iterations < options.max_iter; ++s) {
      Point start;
      if (round == 0) {
        start = {std::acos(1.0 - 2.0 * rng.uniform()), 2.0 * std::numbers::pi * rng.uniform(),
                 std::acos(1.0 - 2.0 * rng.uniform()), 2.0 * std::numbers::pi * rng.uniform()};
      } else {
        for (std::size_t d = 0; d < kDim; ++d) {
          start[d] = best_point[d] + spread * (2.0 * rng.uniform() - 1.0);
        }
      }
      const double step = round == 0 ? 0.5 : spread;
      const SimplexOutcome out =
          nelder_mead(objective, start, step, options.max_iter - result.iterations, kFtol, kXtol);
      result.iterations += std::max(out.iterations, 1);
      if (-out.value > best) {
        best = -out.value;
        best_point = out.best;
      }
    }
    if (round > 0 && best - before < options.tol) {
      result.converged = true;
      break;
    }
  }

  result.best_b1 = direction(best_point[0], best_point[1]);
  result.best_b2 = direction(best_point[2], best_point[3]);
  result.best_s = best;
  return result;
}

LinearFieldMap rest_frame_map(const Vec3& v_com, const FrameConfig& frame, RestFrameMap map) {
  detail::require_subluminal(v_com, "rest_frame_map v_com");
  frame.validate();
  const double gamma_v = gamma(v_com);
  const double gamma_beta = gamma(frame.beta);
  LinearFieldMap out;
  const std::array<Vec3, 3> basis{axes::x, axes::y, axes::z};
  for (std::size_t i = 0; i < 3; ++i) {
    out.columns[i] = map == RestFrameMap::composed
                         ? rest_frame_field_composed(basis[i], v_com, frame.beta)
                         : detail::rest_frame_field_boosted_unchecked(basis[i], v_com, frame.beta,
                                                                      gamma_v, gamma_beta);
  }
  return out;
}

Vec3 solve_compensating_field(const Vec3& target_axis, const Vec3& v_com, const FrameConfig& frame,
                              RestFrameMap map) {
  if (!is_finite(target_axis) || std::abs(norm(target_axis) - 1.0) > kUnitTolerance) {
    throw PreconditionError("solve_compensating_field: target axis is not a unit vector");
  }
  const LinearFieldMap field_map = rest_frame_map(v_com, frame, map);

  Eigen::Matrix3d m;
  for (int c = 0; c < 3; ++c) {
    const Vec3& col = field_map.columns[static_cast<std::size_t>(c)];
    m.col(c) << col.x, col.y, col.z;
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > kMaxConditionNumber) {
    throw NumericalError("degenerate configuration: rest-frame field map is singular");
  }
  const Eigen::Vector3d rhs(target_axis.x, target_axis.y, target_axis.z);
  const Eigen::Vector3d sol = svd.solve(rhs);
  const Vec3 field = Vec3{sol(0), sol(1), sol(2)} / sol.norm();

  const Vec3 image = field_map.apply(field);
  const Vec3 axis = image / norm(image);
  if (norm(axis - target_axis) > kCompensationResidual) {
    throw NumericalError("degenerate configuration: compensating field fails forward check");
  }
  return field;
}

}  // namespace relbell
