#pragma once

#include "relbell/correlations.hpp"

// Acceptance-cone averages of the CHSH quantity over the momentum shell.
//
// The cone is centred on +z in the centre-of-mass frame. The polar integral is
// done with Gauss-Legendre in u = 1 - cos(theta), which absorbs the sin(theta)
// weight; the azimuthal integral uses the uniform periodic rule.

namespace relbell {

struct AcceptanceCone {
  double theta_prime = 0.0;  // radians, (0, pi]

  void validate() const;

  friend bool operator==(const AcceptanceCone&, const AcceptanceCone&) = default;
};

struct QuadratureSpec {
  int n_theta = 128;  // polar nodes per panel (two panels past the equator), >= 2
  int n_phi = 256;    // azimuthal nodes, >= 4 and even
  // The rest-frame axis of particle b varies over an azimuthal width of
  // about 1/gamma near the field directions. When set, n_phi is multiplied
  // by ceil(gamma / kGammaPerPhiBlock) so the periodic rule keeps resolving it.
  bool scale_phi_with_gamma = true;

  static constexpr double kGammaPerPhiBlock = 8.0;

  void validate() const;
  int effective_n_phi(double speed_b) const;

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct ConeAverage {
  double literal = 0.0;     // mean of |E11 + E12 + E21 - E22|
  double correlator = 0.0;  // |mean E11 + mean E12 + mean E21 - mean E22|
};

// Both averages from one pass over the quadrature nodes.
ConeAverage cone_average(const ChshSettings& settings, const MomentumShell& shell,
                         const FrameConfig& frame, const AcceptanceCone& cone,
                         const QuadratureSpec& quad,
                         RestFrameMap map = RestFrameMap::closed_form);

// sin-weighted mean of the pointwise CHSH value over the cone.
double averaged_s(const ChshSettings& settings, const MomentumShell& shell,
                  const FrameConfig& frame, const AcceptanceCone& cone,
                  const QuadratureSpec& quad, RestFrameMap map = RestFrameMap::closed_form);

// Cone-average each correlator first, then form |CHSH|.
double averaged_correlators_s(const ChshSettings& settings, const MomentumShell& shell,
                              const FrameConfig& frame, const AcceptanceCone& cone,
                              const QuadratureSpec& quad,
                              RestFrameMap map = RestFrameMap::closed_form);

}  // namespace relbell
