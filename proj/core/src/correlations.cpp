#include "relbell/correlations.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relbell/errors.hpp"
#include "relbell/kinematics.hpp"

namespace relbell {

namespace {

void require_unit(const Vec3& v, double tol, const char* what) {
  if (!is_finite(v) || std::abs(norm(v) - 1.0) > tol) {
    throw PreconditionError(std::string(what) + ": direction is not a unit vector");
  }
}

Vec3 normalized_axis(const Vec3& field) {
  const double n = norm(field);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw PreconditionError("undefined axis: zero or non-finite field");
  }
  return field / n;
}

}  // namespace

void MomentumShell::validate() const {
  if (!(speed_b > 0.0 && speed_b < 1.0)) {
    throw DomainError("momentum shell: speed_b must lie in (0, 1)");
  }
  if (!(mass_b > 0.0) || !std::isfinite(mass_b)) {
    throw DomainError("momentum shell: mass_b must be positive and finite");
  }
}

double MomentumShell::momentum() const {
  return mass_b * speed_b / std::sqrt(1.0 - speed_b * speed_b);
}

ChshSettings ChshSettings::standard() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {axes::x, axes::y, {h, h, 0.0}, {h, -h, 0.0}};
}

void ChshSettings::validate() const {
  require_unit(a1, kUnitTolerance, "settings a1");
  require_unit(a2, kUnitTolerance, "settings a2");
  require_unit(b1, kUnitTolerance, "settings b1");
  require_unit(b2, kUnitTolerance, "settings b2");
}

void FrameConfig::validate() const { detail::require_subluminal(beta, "frame beta"); }

Vec3 quantization_axis(const Vec3& b_lab, const Vec3& v_com, const FrameConfig& frame,
                       RestFrameMap map) {
  if (norm2(b_lab) == 0.0) {
    throw PreconditionError("undefined axis: zero laboratory field");
  }
  const Vec3 rest = map == RestFrameMap::closed_form
                        ? rest_frame_field_boosted(b_lab, v_com, frame.beta)
                        : rest_frame_field_composed(b_lab, v_com, frame.beta);
  return normalized_axis(rest);
}

Vec3 particle_a_axis(const Vec3& b_lab, const FrameConfig& frame, RestFrameMap map) {
  frame.validate();
  if (norm2(b_lab) == 0.0) {
    throw PreconditionError("undefined axis: zero laboratory field");
  }
  if (map == RestFrameMap::composed) {
    return normalized_axis(boost_field({Vec3{}, b_lab}, frame.beta).b);
  }
  if (std::abs(dot(b_lab, frame.beta)) > kOrthogonalityTolerance * norm(b_lab) * norm(frame.beta)) {
    throw PreconditionError("particle_a_axis: field not orthogonal to boost");
  }
  return normalized_axis(b_lab);
}

double singlet_expectation(const Vec3& n_a, const Vec3& n_b) {
  require_unit(n_a, kSingletUnitTolerance, "singlet_expectation n_a");
  require_unit(n_b, kSingletUnitTolerance, "singlet_expectation n_b");
  return -dot(n_a, n_b);
}

double Correlators::s() const { return std::abs(combination()); }

ChshEvaluator::ChshEvaluator(const ChshSettings& settings, const FrameConfig& frame,
                             RestFrameMap map)
    : a_axes_{particle_a_axis(settings.a1, frame, map), particle_a_axis(settings.a2, frame, map)},
      b_fields_{settings.b1, settings.b2},
      beta_(frame.beta),
      gamma_beta_(gamma(frame.beta)),
      map_(map) {
  settings.validate();
  if (map == RestFrameMap::closed_form) {
    for (const Vec3& b : b_fields_) {
      if (std::abs(dot(b, beta_)) > kOrthogonalityTolerance * norm(beta_)) {
        throw PreconditionError("chsh: particle-b field not orthogonal to boost");
      }
    }
  }
}

Vec3 ChshEvaluator::b_axis(const Vec3& field, const Vec3& v_com) const {
  if (map_ == RestFrameMap::composed) {
    return normalized_axis(rest_frame_field_composed(field, v_com, beta_));
  }
  const double gamma_v = 1.0 / std::sqrt(1.0 - norm2(v_com));
  return normalized_axis(
      detail::rest_frame_field_boosted_unchecked(field, v_com, beta_, gamma_v, gamma_beta_));
}

Correlators ChshEvaluator::correlators(const Vec3& v_com) const {
  const Vec3 n1 = b_axis(b_fields_[0], v_com);
  const Vec3 n2 = b_axis(b_fields_[1], v_com);
  // Axes are unit by construction, so the singlet correlator is -a.b directly.
  return {-dot(a_axes_[0], n1), -dot(a_axes_[0], n2), -dot(a_axes_[1], n1),
          -dot(a_axes_[1], n2)};
}

double chsh_s(const ChshSettings& settings, double theta, double phi, const MomentumShell& shell,
              const FrameConfig& frame, RestFrameMap map) {
  shell.validate();
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw PreconditionError("chsh_s: theta outside [0, pi]");
  }
  if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi)) {
    throw PreconditionError("chsh_s: phi outside [0, 2 pi]");
  }
  const ChshEvaluator evaluator(settings, frame, map);
  return evaluator.s(from_spherical(shell.speed_b, theta, phi));
}

}  // namespace relbell
