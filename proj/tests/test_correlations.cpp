#include "relbell/correlations.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle/oracles.hpp"
#include "relbell/errors.hpp"
#include "relbell/kinematics.hpp"

using namespace relbell;

namespace {

constexpr double kTwoRootTwo = 2.0 * std::numbers::sqrt2;
constexpr double kGamma099 = 7.0888120500833590;

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const Vec3 d{n(rng), n(rng), n(rng)};
  return d / norm(d);
}

}  // namespace

TEST(QuantizationAxis, Examples) {
  const FrameConfig rest{};
  EXPECT_LT(norm(quantization_axis(axes::x, {}, rest) - axes::x), 1e-15);
  EXPECT_LT(norm(quantization_axis(axes::x, {0.0, 0.0, 0.99}, rest) - axes::x), 1e-15);

  const double h = std::numbers::sqrt2 / 2.0;
  const Vec3 got = quantization_axis({h, h, 0.0}, {0.99, 0.0, 0.0}, rest);
  const Vec3 want = Vec3{1.0, kGamma099, 0.0} / std::hypot(1.0, kGamma099);
  EXPECT_LT(norm(got - want), 1e-13);
}

TEST(QuantizationAxis, ZeroFieldIsUndefined) {
  try {
    quantization_axis({}, {0.1, 0.0, 0.0}, {});
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("undefined axis"), std::string::npos);
  }
}

TEST(QuantizationAxis, AlwaysUnitNorm) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> speed(0.0, 0.9999);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 v = speed(rng) * random_unit(rng);
    const FrameConfig frame{{0.0, 0.0, 0.99 * (2.0 * speed(rng) - 1.0)}};
    Vec3 b = random_unit(rng);
    b.z = 0.0;
    ASSERT_NEAR(norm(quantization_axis(b, v, frame)), 1.0, 1e-12);
    ASSERT_NEAR(norm(quantization_axis(random_unit(rng), v, frame, RestFrameMap::composed)), 1.0,
                1e-12);
  }
}

TEST(QuantizationAxis, PropagatesKinematicPreconditions) {
  EXPECT_THROW(quantization_axis(axes::z, {0.1, 0.0, 0.0}, {{0.0, 0.0, 0.5}}), PreconditionError);
  EXPECT_THROW(quantization_axis(axes::x, {0.0, 1.2, 0.0}, {}), DomainError);
  // The composed map accepts the same field.
  EXPECT_NO_THROW(
      quantization_axis(axes::z, {0.1, 0.0, 0.0}, {{0.0, 0.0, 0.5}}, RestFrameMap::composed));
}

TEST(ParticleAAxis, Examples) {
  EXPECT_EQ(particle_a_axis(axes::x, {{0.0, 0.0, 0.7}}), axes::x);
  EXPECT_EQ(particle_a_axis(axes::y, {{0.0, 0.0, 0.99}}), axes::y);
  const Vec3 got = particle_a_axis({3.0, 4.0, 0.0}, {});
  EXPECT_NEAR(got.x, 0.6, 1e-15);
  EXPECT_NEAR(got.y, 0.8, 1e-15);
  EXPECT_EQ(got.z, 0.0);
  EXPECT_THROW(particle_a_axis({}, {}), PreconditionError);
}

TEST(ParticleAAxis, ComposedMapAgreesForOrthogonalFields) {
  const FrameConfig frame{{0.0, 0.0, 0.9}};
  const Vec3 b = Vec3{0.3, -0.4, 0.0} / 0.5;
  EXPECT_LT(norm(particle_a_axis(b, frame, RestFrameMap::composed) - b), 1e-15);
}

TEST(SingletExpectation, Examples) {
  const double h = std::numbers::sqrt2 / 2.0;
  EXPECT_EQ(singlet_expectation(axes::x, axes::x), -1.0);
  EXPECT_EQ(singlet_expectation(axes::x, axes::y), 0.0);
  EXPECT_NEAR(singlet_expectation(axes::x, {h, h, 0.0}), -0.70710678118654752, 1e-15);
}

TEST(SingletExpectation, MatchesTwoQubitStateVector) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = random_unit(rng);
    const Vec3 b = random_unit(rng);
    const double want = relbell_oracle::two_qubit_singlet({a.x, a.y, a.z}, {b.x, b.y, b.z});
    ASSERT_NEAR(singlet_expectation(a, b), want, 1e-12);
  }
}

TEST(SingletExpectation, RejectsNonUnitAxes) {
  EXPECT_THROW(singlet_expectation({1.0, 1.0, 0.0}, axes::x), PreconditionError);
  EXPECT_NO_THROW(singlet_expectation({1.0 + 1e-10, 0.0, 0.0}, axes::x));
}

TEST(ChshS, NonRelativisticLimitIsTsirelson) {
  const MomentumShell shell{1e-9, 1.0};
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double th = std::acos(1.0 - 2.0 * u(rng));
    const double ph = 2.0 * std::numbers::pi * u(rng);
    ASSERT_NEAR(chsh_s(ChshSettings::standard(), th, ph, shell, {}), kTwoRootTwo, 1e-9);
  }
}

TEST(ChshS, PoleIsTsirelsonAtAnySpeed) {
  for (double speed : {0.5, 0.9, 0.99, 0.9999}) {
    EXPECT_NEAR(chsh_s(ChshSettings::standard(), 0.0, 0.0, {speed, 1.0}, {}), kTwoRootTwo, 1e-12);
  }
}

TEST(ChshS, EquatorReferenceValue) {
  // Frozen from an independent evaluation via two successive field boosts.
  const double s = chsh_s(ChshSettings::standard(), std::numbers::pi / 2.0, 0.0, {0.99, 1.0}, {});
  EXPECT_NEAR(s, 2.2597608606534414, 1e-12);
  // Boosted frame, off-axis direction.
  const double sb = chsh_s(ChshSettings::standard(), std::numbers::pi / 3.0, std::numbers::pi / 5.0,
                           {0.99, 1.0}, {{0.0, 0.0, 0.9}});
  EXPECT_NEAR(sb, 2.2267264582784945, 1e-12);
}

TEST(ChshS, TsirelsonBoundAndHalfTurnSymmetry) {
  const ChshSettings std_settings = ChshSettings::standard();
  for (double speed : {0.5, 0.99, 0.9999}) {
    for (double beta : {0.0, 0.9, 0.99}) {
      for (int i = 0; i <= 36; ++i) {
        for (int j = 0; j < 36; ++j) {
          const double th = std::numbers::pi * i / 36.0;
          const double ph = 2.0 * std::numbers::pi * j / 72.0;
          const double s = chsh_s(std_settings, th, ph, {speed, 1.0}, {{0.0, 0.0, beta}});
          ASSERT_GE(s, 0.0);
          ASSERT_LE(s, kTwoRootTwo + 1e-12);
          const double s_half = chsh_s(std_settings, th, ph + std::numbers::pi, {speed, 1.0},
                                       {{0.0, 0.0, beta}});
          ASSERT_NEAR(s, s_half, 1e-10) << speed << " " << beta << " " << th << " " << ph;
        }
      }
    }
  }
}

TEST(ChshS, TsirelsonBoundForRandomSettings) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const ChshSettings s{random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)};
    const double val = chsh_s(s, std::numbers::pi * u(rng), 2.0 * std::numbers::pi * u(rng),
                              {0.9999 * u(rng) + 1e-6, 1.0}, {});
    ASSERT_LE(val, kTwoRootTwo + 1e-12);
  }
}

TEST(ChshS, MassDoesNotMatter) {
  const auto st = ChshSettings::standard();
  EXPECT_EQ(chsh_s(st, 1.0, 2.0, {0.9, 1.0}, {}), chsh_s(st, 1.0, 2.0, {0.9, 1e6}, {}));
}

TEST(ChshS, RejectsBadInputs) {
  const auto st = ChshSettings::standard();
  EXPECT_THROW(chsh_s(st, 0.0, 0.0, {1.0, 1.0}, {}), DomainError);
  EXPECT_THROW(chsh_s(st, 0.0, 0.0, {0.5, 0.0}, {}), DomainError);
  EXPECT_THROW(chsh_s(st, -0.1, 0.0, {0.5, 1.0}, {}), PreconditionError);
  EXPECT_THROW(chsh_s(st, 0.0, 7.0, {0.5, 1.0}, {}), PreconditionError);
  ChshSettings bad = st;
  bad.b1 = {1.0, 1.0, 0.0};
  EXPECT_THROW(chsh_s(bad, 0.0, 0.0, {0.5, 1.0}, {}), PreconditionError);
  ChshSettings tilted = st;
  tilted.b2 = axes::z;
  EXPECT_THROW(chsh_s(tilted, 0.0, 0.0, {0.5, 1.0}, {{0.0, 0.0, 0.3}}), PreconditionError);
}

TEST(MomentumShell, MomentumAndValidation) {
  const MomentumShell s{0.6, 2.0};
  EXPECT_NEAR(s.momentum(), 2.0 * 1.25 * 0.6, 1e-15);
  EXPECT_THROW((MomentumShell{0.0, 1.0}).validate(), DomainError);
  EXPECT_THROW((MomentumShell{0.5, -1.0}).validate(), DomainError);
}
