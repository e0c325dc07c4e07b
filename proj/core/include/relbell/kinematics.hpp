#pragma once

#include "relbell/vec3.hpp"

// Special-relativistic field transformations, c = 1.
//
// Every function here is pure. Velocities are given in units of c and must be
// strictly subluminal; anything else raises DomainError.

namespace relbell {

struct EmField {
  Vec3 e;  // electric
  Vec3 b;  // magnetic

  friend constexpr bool operator==(const EmField&, const EmField&) = default;
};

// Lorentz factor 1/sqrt(1 - |v|^2).
double gamma(const Vec3& v);

// Fields seen in the frame moving with velocity v relative to the frame in
// which f is given:
//   E' = g (E + v x B) - g^2/(g+1) v (v.E)
//   B' = g (B - v x E) - g^2/(g+1) v (v.B)
EmField boost_field(const EmField& f, const Vec3& v);

// Magnetic field in the rest frame of a particle moving with velocity v
// through a pure magnetic field b_lab:
//   B0 = g B - g^2 (v.B)/(g+1) v
Vec3 rest_frame_field(const Vec3& b_lab, const Vec3& v);

// Closed form for a particle moving with v_com in a frame that itself moves
// with beta relative to the laboratory, where the laboratory field is purely
// magnetic and orthogonal to beta:
//   B0' = g_v g_b [B - v x (beta x B)] - g_b g_v^2/(g_v+1) v (v.B)
// Throws PreconditionError when |b_lab . beta| exceeds
// kOrthogonalityTolerance * |b_lab| |beta|.
Vec3 rest_frame_field_boosted(const Vec3& b_lab, const Vec3& v_com, const Vec3& beta);

// Same physical quantity computed as two successive boost_field calls
// (laboratory -> centre of mass -> particle). Valid for any b_lab.
Vec3 rest_frame_field_composed(const Vec3& b_lab, const Vec3& v_com, const Vec3& beta);

inline constexpr double kOrthogonalityTolerance = 1e-9;

namespace detail {

// Throws DomainError unless v is finite and |v| < 1.
void require_subluminal(const Vec3& v, const char* what);

// Closed form without validation; for callers that validated once up front.
// gamma_v and gamma_beta must belong to v_com and beta.
inline Vec3 rest_frame_field_boosted_unchecked(const Vec3& b_lab, const Vec3& v_com,
                                               const Vec3& beta, double gamma_v,
                                               double gamma_beta) {
  const Vec3 bracket = b_lab - cross(v_com, cross(beta, b_lab));
  const double k = gamma_beta * gamma_v * gamma_v / (gamma_v + 1.0);
  return (gamma_v * gamma_beta) * bracket - (k * dot(v_com, b_lab)) * v_com;
}

}  // namespace detail

}  // namespace relbell
