#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relbell/averaging.hpp"
#include "relbell/correlations.hpp"

// Scenario configuration: a YAML document with nested sections. Angles are in
// degrees here and converted to radians when a scenario runs.
//
//   scenario: cone_sweep          # sphere_sweep | cone_sweep |
//                                 # boosted_cone_sweep | optimize | compensate
//   settings: {a1: [1,0,0], a2: [0,1,0], b1: [...], b2: [...]}
//   speed_b: 0.99
//   mass_b: 1
//   beta: 0                       # along +z
//   mode: literal                 # literal | correlator
//   output: out.csv               # empty: stdout
//   grids:
//     theta_deg: [...]            # or {start: 0, stop: 180, count: 181}
//     phi_deg: [...]
//     theta_prime_deg: [...]
//     speeds: [...]
//     betas: [...]
//   quadrature: {n_theta: 128, n_phi: 256, scale_phi_with_gamma: true}
//   optimize: {velocity: [...], cone_deg: 45, tol: 1e-12, max_iter: 200000,
//              starts: 8, seed: 1}
//   compensate: {velocity: [...], targets: [[...], [...]]}

namespace relbell {

enum class Scenario { sphere_sweep, cone_sweep, boosted_cone_sweep, optimize, compensate };

enum class AveragingMode { literal_eq5, averaged_correlators };

std::string_view to_string(Scenario s);
std::string_view to_string(AveragingMode m);
Scenario parse_scenario(std::string_view name);
AveragingMode parse_mode(std::string_view name);

struct SweepGrids {
  std::vector<double> theta_deg;
  std::vector<double> phi_deg;
  std::vector<double> theta_prime_deg;
  std::vector<double> speeds;
  std::vector<double> betas;

  friend bool operator==(const SweepGrids&, const SweepGrids&) = default;
};

struct OptimizeSection {
  Vec3 velocity{0.99, 0.0, 0.0};
  std::optional<double> cone_deg;
  double tol = 1e-12;
  int max_iter = 200000;
  int starts = 8;
  std::uint64_t seed = 0x5eed2012;

  friend bool operator==(const OptimizeSection&, const OptimizeSection&) = default;
};

struct CompensateSection {
  Vec3 velocity{0.99, 0.0, 0.0};
  std::vector<Vec3> targets;

  friend bool operator==(const CompensateSection&, const CompensateSection&) = default;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::sphere_sweep;
  ChshSettings settings = ChshSettings::standard();
  double speed_b = 0.99;
  double mass_b = 1.0;
  double beta = 0.0;
  SweepGrids grids;
  QuadratureSpec quadrature;
  AveragingMode mode = AveragingMode::literal_eq5;
  std::string output_path;
  OptimizeSection optimize;
  CompensateSection compensate;

  // Defaults reproducing the corresponding figure or procedure.
  static ScenarioConfig defaults(Scenario scenario);

  FrameConfig frame() const { return {Vec3{0.0, 0.0, beta}}; }

  // Throws ConfigError describing the first violated constraint.
  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// `count` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int count);

// Parses YAML text. Keys missing from the document keep the defaults of the
// document's scenario. Throws ConfigError on malformed input.
ScenarioConfig parse_config(std::string_view yaml);
ScenarioConfig load_config(const std::string& path);

// Canonical YAML; doubles are written with round-trip precision, so
// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

// Hex SHA-256 of the canonical serialization with output_path cleared.
std::string config_hash(const ScenarioConfig& config);

}  // namespace relbell

namespace relbell {

// Command-line overrides layered on top of a loaded configuration.
struct ConfigOverrides {
  std::optional<double> speed_b;
  std::optional<double> beta;
  std::optional<double> theta_prime_max_deg;
  std::optional<int> grid_theta;
  std::optional<int> grid_phi;
  std::optional<int> quad_theta;
  std::optional<int> quad_phi;
  std::optional<AveragingMode> mode;
  std::optional<std::string> output_path;
};

// speed_b replaces the speed list and rescales the optimize/compensate
// velocities; beta replaces the beta list; theta_prime_max regrids the
// acceptance angles from 0 keeping the point count; grid_theta/grid_phi set
// point counts over [0, 180] and [0, 360].
void apply_overrides(ScenarioConfig& config, const ConfigOverrides& overrides);

}  // namespace relbell
