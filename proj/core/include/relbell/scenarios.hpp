#pragma once

#include <string>
#include <vector>

#include "relbell/config.hpp"

// Scenario runners behind the command-line subcommands. Each returns a table
// of doubles; render_csv turns it into the on-disk format:
//
//   # relbell v1 scenario=<name> config_sha256=<hex>
//   col1,col2,...
//   v,v,...                     (12 significant digits, LF endings)

namespace relbell {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// theta_deg, phi_deg, S
Table run_sphere_sweep(const ScenarioConfig& config);
// speed_b, theta_prime_deg, S_literal, S_correlator_avg
Table run_cone_sweep(const ScenarioConfig& config);
// beta, theta_prime_deg, S_literal, S_correlator_avg
Table run_boosted_cone_sweep(const ScenarioConfig& config);
// b1_x..b2_z, best_s, baseline_s, iterations, converged
Table run_optimize(const ScenarioConfig& config);
// target_x..z, field_x..z, residual
Table run_compensate(const ScenarioConfig& config);

Table run_scenario(const ScenarioConfig& config);

std::string format_value(double v);
std::string render_csv(const Table& table, const ScenarioConfig& config);

// Writes text to path, or to stdout when path is empty. Throws IoError
// naming the path on failure.
void write_output(const std::string& text, const std::string& path);

}  // namespace relbell
