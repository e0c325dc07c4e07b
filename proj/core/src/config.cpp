#include "relbell/config.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "relbell/errors.hpp"

namespace relbell {

namespace {

constexpr std::array kScenarioNames{
    std::pair{Scenario::sphere_sweep, std::string_view{"sphere_sweep"}},
    std::pair{Scenario::cone_sweep, std::string_view{"cone_sweep"}},
    std::pair{Scenario::boosted_cone_sweep, std::string_view{"boosted_cone_sweep"}},
    std::pair{Scenario::optimize, std::string_view{"optimize"}},
    std::pair{Scenario::compensate, std::string_view{"compensate"}},
};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

double read_double(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail("'" + key + "' must be a number");
  }
}

int read_int(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    fail("'" + key + "' must be an integer");
  }
}

Vec3 read_vec3(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() != 3) {
    fail("'" + key + "' must be a list of three numbers");
  }
  return {read_double(node[0], key), read_double(node[1], key), read_double(node[2], key)};
}

std::vector<double> read_grid(const YAML::Node& node, const std::string& key) {
  if (node.IsSequence()) {
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& item : node) {
      out.push_back(read_double(item, key));
    }
    return out;
  }
  if (node.IsMap()) {
    if (!node["start"] || !node["stop"] || !node["count"]) {
      fail("'" + key + "' range form needs start, stop and count");
    }
    return linspace(read_double(node["start"], key), read_double(node["stop"], key),
                    read_int(node["count"], key));
  }
  fail("'" + key + "' must be a list or a {start, stop, count} range");
}

void check_grid(const std::vector<double>& grid, const std::string& key, double lo, double hi,
                bool open_lo, bool open_hi) {
  if (grid.empty()) {
    fail("grid '" + key + "' is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    const bool below = open_lo ? !(g > lo) : !(g >= lo);
    const bool above = open_hi ? !(g < hi) : !(g <= hi);
    if (below || above) {
      fail(fmt::format("grid '{}' value {} outside {}{}, {}{}", key, g, open_lo ? '(' : '[', lo,
                       hi, open_hi ? ')' : ']'));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      fail("grid '" + key + "' must be strictly increasing");
    }
  }
}

bool subluminal(const Vec3& v) { return is_finite(v) && norm2(v) < 1.0; }

// Shortest representation that parses back to the same double.
std::string num(double v) { return fmt::format("{}", v); }

void emit_vec3(YAML::Emitter& out, const Vec3& v) {
  out << YAML::Flow << YAML::BeginSeq << num(v.x) << num(v.y) << num(v.z) << YAML::EndSeq;
}

void emit_list(YAML::Emitter& out, const std::vector<double>& values) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double v : values) {
    out << num(v);
  }
  out << YAML::EndSeq;
}

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) {
      return name;
    }
  }
  return "unknown";
}

std::string_view to_string(AveragingMode m) {
  return m == AveragingMode::literal_eq5 ? "literal" : "correlator";
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& [value, n] : kScenarioNames) {
    if (n == name) {
      return value;
    }
  }
  // The command-line spelling uses dashes.
  std::string underscored(name);
  for (char& c : underscored) {
    if (c == '-') {
      c = '_';
    }
  }
  for (const auto& [value, n] : kScenarioNames) {
    if (n == underscored) {
      return value;
    }
  }
  fail("unknown scenario '" + std::string(name) + "'");
}

AveragingMode parse_mode(std::string_view name) {
  if (name == "literal" || name == "literal_eq5") {
    return AveragingMode::literal_eq5;
  }
  if (name == "correlator" || name == "averaged_correlators") {
    return AveragingMode::averaged_correlators;
  }
  fail("unknown averaging mode '" + std::string(name) + "' (expected literal or correlator)");
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) {
    fail("range count must be positive");
  }
  if (count == 1) {
    return {start};
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = start + step * i;
  }
  out.back() = stop;
  return out;
}

ScenarioConfig ScenarioConfig::defaults(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  c.grids.theta_deg = linspace(0.0, 180.0, 181);
  c.grids.phi_deg = linspace(0.0, 360.0, 361);
  c.grids.theta_prime_deg = linspace(0.0, 180.0, 181);
  c.grids.speeds = {0.5, 0.9, 0.99, 0.9999};
  c.grids.betas = {0.0, 0.7, 0.9, 0.99};
  const double h = std::numbers::sqrt2 / 2.0;
  c.compensate.targets = {{h, h, 0.0}, {h, -h, 0.0}};
  if (scenario == Scenario::compensate) {
    c.beta = 0.9;
  }
  return c;
}

void ScenarioConfig::validate() const {
  try {
    settings.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  if (!(speed_b > 0.0 && speed_b < 1.0)) {
    fail("speed_b must lie in (0, 1)");
  }
  if (!(mass_b > 0.0) || !std::isfinite(mass_b)) {
    fail("mass_b must be positive");
  }
  if (!(std::abs(beta) < 1.0)) {
    fail("beta must satisfy |beta| < 1");
  }
  check_grid(grids.theta_deg, "theta_deg", 0.0, 180.0, false, false);
  check_grid(grids.phi_deg, "phi_deg", 0.0, 360.0, false, false);
  check_grid(grids.theta_prime_deg, "theta_prime_deg", 0.0, 180.0, false, false);
  check_grid(grids.speeds, "speeds", 0.0, 1.0, true, true);
  check_grid(grids.betas, "betas", -1.0, 1.0, true, true);
  try {
    quadrature.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
  if (!subluminal(optimize.velocity)) {
    fail("optimize.velocity must be subluminal");
  }
  if (optimize.cone_deg && !(*optimize.cone_deg > 0.0 && *optimize.cone_deg <= 180.0)) {
    fail("optimize.cone_deg must lie in (0, 180]");
  }
  if (optimize.cone_deg && norm2(optimize.velocity) == 0.0) {
    fail("optimize.velocity must be nonzero when a cone is given");
  }
  if (!(optimize.tol > 0.0) || optimize.max_iter < 1 || optimize.starts < 1) {
    fail("optimize.tol, optimize.max_iter and optimize.starts must be positive");
  }
  if (!subluminal(compensate.velocity)) {
    fail("compensate.velocity must be subluminal");
  }
  if (compensate.targets.empty()) {
    fail("compensate.targets must not be empty");
  }
  for (const Vec3& t : compensate.targets) {
    if (!is_finite(t) || norm2(t) == 0.0) {
      fail("compensate.targets entries must be finite and nonzero");
    }
  }
}

ScenarioConfig parse_config(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    fail(std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) {
    fail("top level must be a mapping");
  }
  if (!root["scenario"]) {
    fail("missing 'scenario'");
  }
  ScenarioConfig c = ScenarioConfig::defaults(parse_scenario(root["scenario"].as<std::string>()));

  if (const auto s = root["settings"]) {
    if (s["a1"]) c.settings.a1 = read_vec3(s["a1"], "settings.a1");
    if (s["a2"]) c.settings.a2 = read_vec3(s["a2"], "settings.a2");
    if (s["b1"]) c.settings.b1 = read_vec3(s["b1"], "settings.b1");
    if (s["b2"]) c.settings.b2 = read_vec3(s["b2"], "settings.b2");
  }
  if (root["speed_b"]) c.speed_b = read_double(root["speed_b"], "speed_b");
  if (root["mass_b"]) c.mass_b = read_double(root["mass_b"], "mass_b");
  if (root["beta"]) c.beta = read_double(root["beta"], "beta");
  if (root["mode"]) c.mode = parse_mode(root["mode"].as<std::string>());
  if (root["output"]) c.output_path = root["output"].as<std::string>();

  if (const auto g = root["grids"]) {
    if (g["theta_deg"]) c.grids.theta_deg = read_grid(g["theta_deg"], "grids.theta_deg");
    if (g["phi_deg"]) c.grids.phi_deg = read_grid(g["phi_deg"], "grids.phi_deg");
    if (g["theta_prime_deg"]) {
      c.grids.theta_prime_deg = read_grid(g["theta_prime_deg"], "grids.theta_prime_deg");
    }
    if (g["speeds"]) c.grids.speeds = read_grid(g["speeds"], "grids.speeds");
    if (g["betas"]) c.grids.betas = read_grid(g["betas"], "grids.betas");
  }
  if (const auto q = root["quadrature"]) {
    if (q["n_theta"]) c.quadrature.n_theta = read_int(q["n_theta"], "quadrature.n_theta");
    if (q["n_phi"]) c.quadrature.n_phi = read_int(q["n_phi"], "quadrature.n_phi");
    if (q["scale_phi_with_gamma"]) {
      c.quadrature.scale_phi_with_gamma = q["scale_phi_with_gamma"].as<bool>();
    }
  }
  if (const auto o = root["optimize"]) {
    if (o["velocity"]) c.optimize.velocity = read_vec3(o["velocity"], "optimize.velocity");
    if (o["cone_deg"]) {
      if (o["cone_deg"].IsNull()) {
        c.optimize.cone_deg.reset();
      } else {
        c.optimize.cone_deg = read_double(o["cone_deg"], "optimize.cone_deg");
      }
    }
    if (o["tol"]) c.optimize.tol = read_double(o["tol"], "optimize.tol");
    if (o["max_iter"]) c.optimize.max_iter = read_int(o["max_iter"], "optimize.max_iter");
    if (o["starts"]) c.optimize.starts = read_int(o["starts"], "optimize.starts");
    if (o["seed"]) {
      try {
        c.optimize.seed = o["seed"].as<std::uint64_t>();
      } catch (const YAML::Exception&) {
        fail("'optimize.seed' must be a non-negative integer");
      }
    }
  }
  if (const auto p = root["compensate"]) {
    if (p["velocity"]) c.compensate.velocity = read_vec3(p["velocity"], "compensate.velocity");
    if (const auto t = p["targets"]) {
      if (!t.IsSequence()) {
        fail("'compensate.targets' must be a list of 3-vectors");
      }
      c.compensate.targets.clear();
      for (const auto& item : t) {
        c.compensate.targets.push_back(read_vec3(item, "compensate.targets"));
      }
    }
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "scenario" << YAML::Value << std::string(to_string(c.scenario));
  out << YAML::Key << "settings" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "a1" << YAML::Value;
  emit_vec3(out, c.settings.a1);
  out << YAML::Key << "a2" << YAML::Value;
  emit_vec3(out, c.settings.a2);
  out << YAML::Key << "b1" << YAML::Value;
  emit_vec3(out, c.settings.b1);
  out << YAML::Key << "b2" << YAML::Value;
  emit_vec3(out, c.settings.b2);
  out << YAML::EndMap;
  out << YAML::Key << "speed_b" << YAML::Value << num(c.speed_b);
  out << YAML::Key << "mass_b" << YAML::Value << num(c.mass_b);
  out << YAML::Key << "beta" << YAML::Value << num(c.beta);
  out << YAML::Key << "mode" << YAML::Value << std::string(to_string(c.mode));
  out << YAML::Key << "output" << YAML::Value << YAML::DoubleQuoted << c.output_path;

  out << YAML::Key << "grids" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "theta_deg" << YAML::Value;
  emit_list(out, c.grids.theta_deg);
  out << YAML::Key << "phi_deg" << YAML::Value;
  emit_list(out, c.grids.phi_deg);
  out << YAML::Key << "theta_prime_deg" << YAML::Value;
  emit_list(out, c.grids.theta_prime_deg);
  out << YAML::Key << "speeds" << YAML::Value;
  emit_list(out, c.grids.speeds);
  out << YAML::Key << "betas" << YAML::Value;
  emit_list(out, c.grids.betas);
  out << YAML::EndMap;

  out << YAML::Key << "quadrature" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_theta" << YAML::Value << c.quadrature.n_theta;
  out << YAML::Key << "n_phi" << YAML::Value << c.quadrature.n_phi;
  out << YAML::Key << "scale_phi_with_gamma" << YAML::Value << c.quadrature.scale_phi_with_gamma;
  out << YAML::EndMap;

  out << YAML::Key << "optimize" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "velocity" << YAML::Value;
  emit_vec3(out, c.optimize.velocity);
  out << YAML::Key << "cone_deg" << YAML::Value;
  if (c.optimize.cone_deg) {
    out << num(*c.optimize.cone_deg);
  } else {
    out << YAML::Null;
  }
  out << YAML::Key << "tol" << YAML::Value << num(c.optimize.tol);
  out << YAML::Key << "max_iter" << YAML::Value << c.optimize.max_iter;
  out << YAML::Key << "starts" << YAML::Value << c.optimize.starts;
  out << YAML::Key << "seed" << YAML::Value << c.optimize.seed;
  out << YAML::EndMap;

  out << YAML::Key << "compensate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "velocity" << YAML::Value;
  emit_vec3(out, c.compensate.velocity);
  out << YAML::Key << "targets" << YAML::Value << YAML::BeginSeq;
  for (const Vec3& t : c.compensate.targets) {
    emit_vec3(out, t);
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string config_hash(const ScenarioConfig& config) {
  ScenarioConfig canonical = config;
  canonical.output_path.clear();
  const std::string text = serialize_config(canonical);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("config_hash: SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += fmt::format("{:02x}", digest[i]);
  }
  return hex;
}

void apply_overrides(ScenarioConfig& config, const ConfigOverrides& o) {
  if (o.speed_b) {
    config.speed_b = *o.speed_b;
    config.grids.speeds = {*o.speed_b};
    auto rescale = [&](Vec3& v) {
      const double n = norm(v);
      v = n > 0.0 ? (*o.speed_b / n) * v : Vec3{0.0, 0.0, *o.speed_b};
    };
    rescale(config.optimize.velocity);
    rescale(config.compensate.velocity);
  }
  if (o.beta) {
    config.beta = *o.beta;
    config.grids.betas = {*o.beta};
  }
  if (o.theta_prime_max_deg) {
    const int count = std::max<int>(2, static_cast<int>(config.grids.theta_prime_deg.size()));
    config.grids.theta_prime_deg = linspace(0.0, *o.theta_prime_max_deg, count);
  }
  if (o.grid_theta) {
    config.grids.theta_deg = linspace(0.0, 180.0, *o.grid_theta);
  }
  if (o.grid_phi) {
    config.grids.phi_deg = linspace(0.0, 360.0, *o.grid_phi);
  }
  if (o.quad_theta) config.quadrature.n_theta = *o.quad_theta;
  if (o.quad_phi) config.quadrature.n_phi = *o.quad_phi;
  if (o.mode) config.mode = *o.mode;
  if (o.output_path) config.output_path = *o.output_path;
}

}  // namespace relbell
