// relbell: CHSH statistics for relativistic spin-1/2 singlet pairs.
//
//   relbell <subcommand> [--config file.yaml] [overrides...]
//
// Exit codes: 0 success, 2 config/validation error, 3 numerical error,
// 4 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "relbell/config.hpp"
#include "relbell/errors.hpp"
#include "relbell/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommandLine {
  std::string config_path;
  relbell::ConfigOverrides overrides;
  std::optional<std::string> mode;
};

void add_common_options(CLI::App& cmd, CommandLine& cl) {
  cmd.add_option("--config", cl.config_path, "YAML scenario configuration");
  cmd.add_option("--speed-b", cl.overrides.speed_b, "particle-b speed in units of c");
  cmd.add_option("--beta", cl.overrides.beta, "centre-of-mass velocity along +z (units of c)");
  cmd.add_option("--theta-prime-max", cl.overrides.theta_prime_max_deg,
                 "largest acceptance angle in degrees");
  cmd.add_option("--grid-theta", cl.overrides.grid_theta, "polar grid points over [0, 180] deg");
  cmd.add_option("--grid-phi", cl.overrides.grid_phi, "azimuthal grid points over [0, 360] deg");
  cmd.add_option("--quad-theta", cl.overrides.quad_theta, "polar quadrature nodes per panel");
  cmd.add_option("--quad-phi", cl.overrides.quad_phi, "azimuthal quadrature nodes (even)");
  cmd.add_option("--mode", cl.mode, "cone averaging: literal | correlator")
      ->check(CLI::IsMember({"literal", "correlator"}));
  cmd.add_option("--out", cl.overrides.output_path, "output CSV path (default: stdout)");
}

int run(relbell::Scenario scenario, CommandLine& cl) {
  using namespace relbell;
  try {
    ScenarioConfig config = cl.config_path.empty() ? ScenarioConfig::defaults(scenario)
                                                   : load_config(cl.config_path);
    if (config.scenario != scenario) {
      throw ConfigError("config file describes scenario '" + std::string(to_string(config.scenario)) +
                        "' but subcommand is '" + std::string(to_string(scenario)) + "'");
    }
    if (cl.mode) {
      cl.overrides.mode = parse_mode(*cl.mode);
    }
    apply_overrides(config, cl.overrides);
    config.validate();
    const Table table = run_scenario(config);
    write_output(render_csv(table, config), config.output_path);
    return 0;
  } catch (const IoError& e) {
    std::cerr << "relbell: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    std::cerr << "relbell: numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "relbell: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH statistics for relativistic spin-1/2 singlet pairs"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    relbell::Scenario scenario;
  };
  const Sub subs[] = {
      {"sphere-sweep", "pointwise S over particle-b directions", relbell::Scenario::sphere_sweep},
      {"cone-sweep", "acceptance-cone average vs theta' for several speeds",
       relbell::Scenario::cone_sweep},
      {"boosted-cone-sweep", "acceptance-cone average vs theta' for several frame boosts",
       relbell::Scenario::boosted_cone_sweep},
      {"optimize", "maximize S over particle-b field directions", relbell::Scenario::optimize},
      {"compensate", "laboratory fields giving target rest-frame axes",
       relbell::Scenario::compensate},
  };

  CommandLine cl;
  for (const Sub& s : subs) {
    add_common_options(*app.add_subcommand(s.name, s.help), cl);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (const Sub& s : subs) {
    if (app.got_subcommand(s.name)) {
      return run(s.scenario, cl);
    }
  }
  return kExitConfig;
}
