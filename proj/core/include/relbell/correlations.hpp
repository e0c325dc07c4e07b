#pragma once

#include <array>

#include "relbell/vec3.hpp"

namespace relbell {

// Isotropic momentum shell of particle b in the centre-of-mass frame.
// mass_b is carried for completeness; only speed_b enters the axes.
struct MomentumShell {
  double speed_b = 0.0;
  double mass_b = 1.0;

  // Throws DomainError unless 0 < speed_b < 1 and mass_b > 0.
  void validate() const;
  double momentum() const;

  friend bool operator==(const MomentumShell&, const MomentumShell&) = default;
};

// Laboratory-frame apparatus field directions. a1, a2 act on particle a,
// b1, b2 on particle b.
struct ChshSettings {
  Vec3 a1;
  Vec3 a2;
  Vec3 b1;
  Vec3 b2;

  // a1 = x, a2 = y, b1 = (x+y)/sqrt2, b2 = (x-y)/sqrt2.
  static ChshSettings standard();

  // Throws PreconditionError unless every direction is unit within 1e-12.
  void validate() const;

  friend bool operator==(const ChshSettings&, const ChshSettings&) = default;
};

// Velocity of the centre-of-mass frame relative to the observer.
struct FrameConfig {
  Vec3 beta;

  void validate() const;
  bool is_rest() const { return beta == Vec3{}; }

  friend bool operator==(const FrameConfig&, const FrameConfig&) = default;
};

// How the laboratory field is carried into the particle rest frame.
enum class RestFrameMap {
  // Closed form; requires every field orthogonal to beta.
  closed_form,
  // Two successive field boosts; valid for any field.
  composed,
};

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kSingletUnitTolerance = 1e-9;

// Spin quantization axis of particle b: the normalized rest-frame field.
// Throws PreconditionError for a zero field ("undefined axis") and for a
// field not orthogonal to beta under the closed form.
Vec3 quantization_axis(const Vec3& b_lab, const Vec3& v_com, const FrameConfig& frame,
                       RestFrameMap map = RestFrameMap::closed_form);

// Particle a is non-relativistic in the centre-of-mass frame, so its axis is
// the field direction in that frame. Under the closed form this is simply the
// normalized laboratory field.
Vec3 particle_a_axis(const Vec3& b_lab, const FrameConfig& frame,
                     RestFrameMap map = RestFrameMap::closed_form);

// Singlet joint expectation <(n_a.sigma) (x) (n_b.sigma)> = -n_a.n_b.
double singlet_expectation(const Vec3& n_a, const Vec3& n_b);

struct Correlators {
  double e11 = 0.0;
  double e12 = 0.0;
  double e21 = 0.0;
  double e22 = 0.0;

  // The signed CHSH combination E11 + E12 + E21 - E22.
  double combination() const { return e11 + e12 + e21 - e22; }
  double s() const;
};

// Evaluates the four correlators for many particle-b velocities with the same
// settings and frame. Everything velocity-independent is validated and
// precomputed once.
class ChshEvaluator {
 public:
  ChshEvaluator(const ChshSettings& settings, const FrameConfig& frame,
                RestFrameMap map = RestFrameMap::closed_form);

  // v_com must be subluminal; this is not re-checked.
  Correlators correlators(const Vec3& v_com) const;
  double s(const Vec3& v_com) const { return correlators(v_com).s(); }

 private:
  Vec3 b_axis(const Vec3& field, const Vec3& v_com) const;

  std::array<Vec3, 2> a_axes_;
  std::array<Vec3, 2> b_fields_;
  Vec3 beta_;
  double gamma_beta_;
  RestFrameMap map_;
};

// Pointwise CHSH value for particle b moving with shell.speed_b along
// (theta, phi). theta in [0, pi], phi in [0, 2 pi].
double chsh_s(const ChshSettings& settings, double theta, double phi, const MomentumShell& shell,
              const FrameConfig& frame, RestFrameMap map = RestFrameMap::closed_form);

}  // namespace relbell
