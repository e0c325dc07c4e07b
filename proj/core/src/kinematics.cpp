#include "relbell/kinematics.hpp"

#include <cmath>
#include <string>

#include "relbell/errors.hpp"

namespace relbell {

namespace detail {

void require_subluminal(const Vec3& v, const char* what) {
  if (!is_finite(v)) {
    throw DomainError(std::string(what) + ": non-finite velocity");
  }
  if (norm2(v) >= 1.0) {
    throw DomainError(std::string(what) + ": superluminal velocity (|v| >= 1)");
  }
}

}  // namespace detail

double gamma(const Vec3& v) {
  detail::require_subluminal(v, "gamma");
  return 1.0 / std::sqrt(1.0 - norm2(v));
}

EmField boost_field(const EmField& f, const Vec3& v) {
  const double g = gamma(v);
  const double k = g * g / (g + 1.0);
  return {
      g * (f.e + cross(v, f.b)) - (k * dot(v, f.e)) * v,
      g * (f.b - cross(v, f.e)) - (k * dot(v, f.b)) * v,
  };
}

Vec3 rest_frame_field(const Vec3& b_lab, const Vec3& v) {
  const double g = gamma(v);
  return g * b_lab - (g * g * dot(v, b_lab) / (g + 1.0)) * v;
}

Vec3 rest_frame_field_boosted(const Vec3& b_lab, const Vec3& v_com, const Vec3& beta) {
  const double gamma_v = gamma(v_com);
  const double gamma_beta = gamma(beta);
  if (std::abs(dot(b_lab, beta)) > kOrthogonalityTolerance * norm(b_lab) * norm(beta)) {
    throw PreconditionError("rest_frame_field_boosted: field not orthogonal to boost");
  }
  return detail::rest_frame_field_boosted_unchecked(b_lab, v_com, beta, gamma_v, gamma_beta);
}

Vec3 rest_frame_field_composed(const Vec3& b_lab, const Vec3& v_com, const Vec3& beta) {
  const EmField com = boost_field({Vec3{}, b_lab}, beta);
  return boost_field(com, v_com).b;
}

}  // namespace relbell
