#include "relbell/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "relbell/errors.hpp"
#include "relbell/kinematics.hpp"
#include "relbell/quadrature.hpp"

namespace relbell {

void AcceptanceCone::validate() const {
  if (!(theta_prime > 0.0 && theta_prime <= std::numbers::pi)) {
    throw PreconditionError("acceptance cone: theta_prime must lie in (0, pi]");
  }
}

void QuadratureSpec::validate() const {
  if (n_theta < 2) {
    throw PreconditionError("quadrature: n_theta must be at least 2");
  }
  if (n_phi < 4 || n_phi % 2 != 0) {
    throw PreconditionError("quadrature: n_phi must be even and at least 4");
  }
}

int QuadratureSpec::effective_n_phi(double speed_b) const {
  if (!scale_phi_with_gamma) {
    return n_phi;
  }
  const double g = gamma(Vec3{0.0, 0.0, speed_b});
  const double blocks = std::ceil(g / kGammaPerPhiBlock);
  return n_phi * static_cast<int>(blocks);
}

ConeAverage cone_average(const ChshSettings& settings, const MomentumShell& shell,
                         const FrameConfig& frame, const AcceptanceCone& cone,
                         const QuadratureSpec& quad, RestFrameMap map) {
  shell.validate();
  frame.validate();
  cone.validate();
  quad.validate();
  const ChshEvaluator evaluator(settings, frame, map);

  const double half_angle = 0.5 * cone.theta_prime;
  const double u_max = 2.0 * std::sin(half_angle) * std::sin(half_angle);
  // Fast particles give a sharp feature on the equator (u = 1); keep it on a
  // panel boundary where the Gauss nodes cluster.
  const auto n_theta = static_cast<std::size_t>(quad.n_theta);
  QuadratureRule polar = gauss_legendre(n_theta, 0.0, std::min(u_max, 1.0));
  if (u_max > 1.0) {
    const QuadratureRule lower = gauss_legendre(n_theta, 1.0, u_max);
    polar.nodes.insert(polar.nodes.end(), lower.nodes.begin(), lower.nodes.end());
    polar.weights.insert(polar.weights.end(), lower.weights.begin(), lower.weights.end());
  }

  const int n_phi = quad.effective_n_phi(shell.speed_b);
  std::vector<double> cos_phi(static_cast<std::size_t>(n_phi));
  std::vector<double> sin_phi(static_cast<std::size_t>(n_phi));
  for (int k = 0; k < n_phi; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_phi;
    cos_phi[static_cast<std::size_t>(k)] = std::cos(phi);
    sin_phi[static_cast<std::size_t>(k)] = std::sin(phi);
  }

  double weight_sum = 0.0;
  double s_sum = 0.0;
  Correlators e_sum;
  for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
    // u = 1 - cos(theta) = 2 sin^2(theta / 2)
    const double theta = 2.0 * std::asin(std::sqrt(0.5 * polar.nodes[i]));
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);

    double row_s = 0.0;
    Correlators row_e;
    for (std::size_t k = 0; k < cos_phi.size(); ++k) {
      const Vec3 v{shell.speed_b * sin_t * cos_phi[k], shell.speed_b * sin_t * sin_phi[k],
                   shell.speed_b * cos_t};
      const Correlators c = evaluator.correlators(v);
      row_s += c.s();
      row_e.e11 += c.e11;
      row_e.e12 += c.e12;
      row_e.e21 += c.e21;
      row_e.e22 += c.e22;
    }
    const double w = polar.weights[i] / static_cast<double>(n_phi);
    weight_sum += polar.weights[i];
    s_sum += w * row_s;
    e_sum.e11 += w * row_e.e11;
    e_sum.e12 += w * row_e.e12;
    e_sum.e21 += w * row_e.e21;
    e_sum.e22 += w * row_e.e22;
  }

  const Correlators mean{e_sum.e11 / weight_sum, e_sum.e12 / weight_sum, e_sum.e21 / weight_sum,
                         e_sum.e22 / weight_sum};
  return {s_sum / weight_sum, mean.s()};
}

double averaged_s(const ChshSettings& settings, const MomentumShell& shell,
                  const FrameConfig& frame, const AcceptanceCone& cone,
                  const QuadratureSpec& quad, RestFrameMap map) {
  return cone_average(settings, shell, frame, cone, quad, map).literal;
}

double averaged_correlators_s(const ChshSettings& settings, const MomentumShell& shell,
                              const FrameConfig& frame, const AcceptanceCone& cone,
                              const QuadratureSpec& quad, RestFrameMap map) {
  return cone_average(settings, shell, frame, cone, quad, map).correlator;
}

}  // namespace relbell
