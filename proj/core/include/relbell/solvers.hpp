#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "relbell/averaging.hpp"
#include "relbell/correlations.hpp"

namespace relbell {

// ---------------------------------------------------------------------------
// Measurement-direction optimization
// ---------------------------------------------------------------------------

enum class ConeObjective {
  literal,     // averaged_s
  correlator,  // averaged_correlators_s
};

struct OptimizeOptions {
  // Absent: maximize the pointwise value at v_com. Present: maximize the
  // cone average; only |v_com| is used, the cone is centred on +z.
  std::optional<AcceptanceCone> cone;
  QuadratureSpec quad;
  ConeObjective objective = ConeObjective::literal;
  // A restart round that improves the best value by less than tol ends the
  // search as converged.
  double tol = 1e-12;
  // Budget of simplex iterations summed over all starts and rounds.
  int max_iter = 200000;
  int starts = 8;
  std::uint64_t seed = 0x5eed2012;
};

struct OptimizationResult {
  Vec3 best_b1;
  Vec3 best_b2;
  double best_s = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximizes the CHSH value over the two particle-b laboratory field
// directions, with particle-a directions a1, a2 held fixed. Each direction is
// parameterized by its spherical angles and searched by multi-start
// Nelder-Mead. When the frame is boosted the fields are carried to the rest
// frame with RestFrameMap::composed, because candidate fields are not
// restricted to the plane orthogonal to beta.
//
// Deterministic: identical arguments give bit-identical results.
OptimizationResult optimize_directions(const Vec3& a1, const Vec3& a2, const Vec3& v_com,
                                       const FrameConfig& frame,
                                       const OptimizeOptions& options = {});

// ---------------------------------------------------------------------------
// Compensating fields
// ---------------------------------------------------------------------------

// The laboratory-to-rest-frame field map is linear in the field. Columns are
// the images of x, y, z.
struct LinearFieldMap {
  std::array<Vec3, 3> columns;

  Vec3 apply(const Vec3& b) const {
    return b.x * columns[0] + b.y * columns[1] + b.z * columns[2];
  }
  double determinant() const { return dot(columns[0], cross(columns[1], columns[2])); }
};

// composed: exact two-step boost, valid for every field.
// closed_form: the closed-form expression evaluated on the basis vectors
// without its orthogonality precondition; it agrees with the exact map only
// on fields orthogonal to beta.
LinearFieldMap rest_frame_map(const Vec3& v_com, const FrameConfig& frame,
                              RestFrameMap map = RestFrameMap::composed);

inline constexpr double kMaxConditionNumber = 1e12;
inline constexpr double kCompensationResidual = 1e-9;

// Laboratory field direction whose rest-frame image points along
// target_axis. Solved exactly from the linear map; the result is forward
// checked and NumericalError is thrown for a singular map (condition number
// above kMaxConditionNumber) or a failed check.
Vec3 solve_compensating_field(const Vec3& target_axis, const Vec3& v_com, const FrameConfig& frame,
                              RestFrameMap map = RestFrameMap::composed);

}  // namespace relbell
