#include "relbell/scenarios.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "relbell/averaging.hpp"
#include "relbell/errors.hpp"
#include "relbell/parallel.hpp"
#include "relbell/solvers.hpp"

namespace relbell {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

using Row = std::vector<double>;

// One cone-sweep curve; theta_prime = 0 falls back to the pointwise value at
// the pole, where the cone average is undefined.
std::vector<Row> cone_curve(const ScenarioConfig& config, double label, double speed,
                            const FrameConfig& frame) {
  const MomentumShell shell{speed, config.mass_b};
  const auto& grid = config.grids.theta_prime_deg;
  return parallel_map<Row>(grid.size(), [&](std::size_t i) {
    const double tp = grid[i];
    if (tp == 0.0) {
      const double s = chsh_s(config.settings, 0.0, 0.0, shell, frame);
      return Row{label, tp, s, s};
    }
    const ConeAverage avg =
        cone_average(config.settings, shell, frame, AcceptanceCone{tp * kDegree}, config.quadrature);
    return Row{label, tp, avg.literal, avg.correlator};
  });
}

RestFrameMap map_for(const FrameConfig& frame) {
  return frame.is_rest() ? RestFrameMap::closed_form : RestFrameMap::composed;
}

}  // namespace

Table run_sphere_sweep(const ScenarioConfig& config) {
  config.validate();
  const MomentumShell shell{config.speed_b, config.mass_b};
  const FrameConfig frame = config.frame();
  const auto& thetas = config.grids.theta_deg;
  const auto& phis = config.grids.phi_deg;

  Table table{{"theta_deg", "phi_deg", "S"}, {}};
  table.rows = parallel_map<Row>(thetas.size() * phis.size(), [&](std::size_t idx) {
    const double t = thetas[idx / phis.size()];
    const double p = phis[idx % phis.size()];
    return Row{t, p, chsh_s(config.settings, t * kDegree, p * kDegree, shell, frame)};
  });
  return table;
}

Table run_cone_sweep(const ScenarioConfig& config) {
  config.validate();
  Table table{{"speed_b", "theta_prime_deg", "S_literal", "S_correlator_avg"}, {}};
  for (double speed : config.grids.speeds) {
    for (Row& row : cone_curve(config, speed, speed, FrameConfig{})) {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Table run_boosted_cone_sweep(const ScenarioConfig& config) {
  config.validate();
  Table table{{"beta", "theta_prime_deg", "S_literal", "S_correlator_avg"}, {}};
  for (double beta : config.grids.betas) {
    const FrameConfig frame{Vec3{0.0, 0.0, beta}};
    for (Row& row : cone_curve(config, beta, config.speed_b, frame)) {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Table run_optimize(const ScenarioConfig& config) {
  config.validate();
  const FrameConfig frame = config.frame();
  const auto& opt = config.optimize;

  OptimizeOptions options;
  options.quad = config.quadrature;
  options.objective = config.mode == AveragingMode::literal_eq5 ? ConeObjective::literal
                                                                : ConeObjective::correlator;
  options.tol = opt.tol;
  options.max_iter = opt.max_iter;
  options.starts = opt.starts;
  options.seed = opt.seed;
  double baseline = 0.0;
  const RestFrameMap map = map_for(frame);
  if (opt.cone_deg) {
    options.cone = AcceptanceCone{*opt.cone_deg * kDegree};
    const MomentumShell shell{norm(opt.velocity), config.mass_b};
    const ConeAverage avg =
        cone_average(config.settings, shell, frame, *options.cone, config.quadrature, map);
    baseline = options.objective == ConeObjective::literal ? avg.literal : avg.correlator;
  } else {
    baseline = ChshEvaluator(config.settings, frame, map).s(opt.velocity);
  }

  const OptimizationResult r =
      optimize_directions(config.settings.a1, config.settings.a2, opt.velocity, frame, options);
  Table table{{"b1_x", "b1_y", "b1_z", "b2_x", "b2_y", "b2_z", "best_s", "baseline_s",
               "iterations", "converged"},
              {}};
  table.rows.push_back({r.best_b1.x, r.best_b1.y, r.best_b1.z, r.best_b2.x, r.best_b2.y,
                        r.best_b2.z, r.best_s, baseline, static_cast<double>(r.iterations),
                        r.converged ? 1.0 : 0.0});
  return table;
}

Table run_compensate(const ScenarioConfig& config) {
  config.validate();
  const FrameConfig frame = config.frame();
  const Vec3 v = config.compensate.velocity;
  Table table{{"target_x", "target_y", "target_z", "field_x", "field_y", "field_z", "residual"}, {}};
  for (const Vec3& raw : config.compensate.targets) {
    const Vec3 target = raw / norm(raw);
    Vec3 field;
    try {
      field = solve_compensating_field(target, v, frame);
    } catch (const NumericalError& e) {
      throw NumericalError(fmt::format("compensate: target ({}, {}, {}) with velocity ({}, {}, {}) "
                                       "and beta {}: {}",
                                       target.x, target.y, target.z, v.x, v.y, v.z, config.beta,
                                       e.what()));
    }
    const double residual =
        norm(quantization_axis(field, v, frame, RestFrameMap::composed) - target);
    if (residual > kCompensationResidual) {
      throw NumericalError(fmt::format("compensate: forward-check residual {} exceeds {}",
                                       residual, kCompensationResidual));
    }
    table.rows.push_back({target.x, target.y, target.z, field.x, field.y, field.z, residual});
  }
  return table;
}

Table run_scenario(const ScenarioConfig& config) {
  switch (config.scenario) {
    case Scenario::sphere_sweep:
      return run_sphere_sweep(config);
    case Scenario::cone_sweep:
      return run_cone_sweep(config);
    case Scenario::boosted_cone_sweep:
      return run_boosted_cone_sweep(config);
    case Scenario::optimize:
      return run_optimize(config);
    case Scenario::compensate:
      return run_compensate(config);
  }
  throw ConfigError("unknown scenario");
}

std::string format_value(double v) {
  // Normalize negative zero so sign noise never changes the bytes.
  if (v == 0.0) {
    v = 0.0;
  }
  return fmt::format("{:.12g}", v);
}

std::string render_csv(const Table& table, const ScenarioConfig& config) {
  std::string out = fmt::format("# relbell v1 scenario={} config_sha256={}\n",
                                to_string(config.scenario), config_hash(config));
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out += ',';
      }
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    if (!std::cout) {
      throw IoError("failed writing to stdout");
    }
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open output file '" + path + "'");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("failed writing output file '" + path + "'");
  }
}

}  // namespace relbell
