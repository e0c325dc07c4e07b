#include "relbell/kinematics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle/oracles.hpp"
#include "relbell/errors.hpp"

using namespace relbell;

namespace {

constexpr double kGamma099 = 7.0888120500833590;  // 1/sqrt(1 - 0.99^2)
constexpr double kGamma09 = 2.2941573387056177;

double rel_err(const Vec3& got, const Vec3& want) {
  return norm(got - want) / std::max(norm(want), 1e-300);
}

Vec3 random_velocity(std::mt19937_64& rng, double max_speed = 0.999) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(0.0, max_speed);
  Vec3 d{n(rng), n(rng), n(rng)};
  return (u(rng) / norm(d)) * d;
}

Vec3 random_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng)};
}

relbell_oracle::V3 arr(const Vec3& v) { return {v.x, v.y, v.z}; }
Vec3 vec(const relbell_oracle::V3& a) { return {a[0], a[1], a[2]}; }

}  // namespace

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(Vec3{}), 1.0);
  EXPECT_NEAR(gamma({0.0, 0.0, 0.99}), kGamma099, 1e-13);
  EXPECT_NEAR(gamma({0.6, 0.0, 0.0}), 1.25, 1e-15);
}

TEST(Gamma, RejectsSuperluminal) {
  EXPECT_THROW(gamma({1.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(gamma({0.8, 0.8, 0.0}), DomainError);
  EXPECT_THROW(gamma({NAN, 0.0, 0.0}), DomainError);
}

TEST(BoostField, IdentityBoost) {
  const EmField f{{}, axes::x};
  EXPECT_EQ(boost_field(f, {}), f);
}

TEST(BoostField, PerpendicularMagneticField) {
  const Vec3 v{0.0, 0.0, 0.99};
  const EmField out = boost_field({{}, axes::x}, v);
  EXPECT_LT(rel_err(out.b, kGamma099 * axes::x), 1e-14);
  // E' = g v x B = g 0.99 (z x x) = g 0.99 y
  EXPECT_LT(rel_err(out.e, (kGamma099 * 0.99) * axes::y), 1e-14);
}

TEST(BoostField, ParallelMagneticFieldUnchanged) {
  const EmField out = boost_field({{}, 2.5 * axes::x}, {0.99, 0.0, 0.0});
  EXPECT_LT(rel_err(out.b, 2.5 * axes::x), 1e-13);
  EXPECT_LT(norm(out.e), 1e-15);
}

TEST(BoostField, MatchesTextbookDecomposition) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const EmField f{random_vec(rng), random_vec(rng)};
    const Vec3 v = random_velocity(rng);
    const EmField got = boost_field(f, v);
    const auto want = relbell_oracle::boost_textbook({arr(f.e), arr(f.b)}, arr(v));
    ASSERT_LT(rel_err(got.e, vec(want.e)), 1e-10);
    ASSERT_LT(rel_err(got.b, vec(want.b)), 1e-10);
  }
}

TEST(BoostField, RoundTripRestoresField) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const EmField f{random_vec(rng), random_vec(rng)};
    const Vec3 v = random_velocity(rng, 0.99);
    const EmField back = boost_field(boost_field(f, v), -v);
    const double scale = std::max(norm(f.e), norm(f.b));
    ASSERT_LT(norm(back.e - f.e) / scale, 1e-10);
    ASSERT_LT(norm(back.b - f.b) / scale, 1e-10);
  }
}

TEST(BoostField, PreservesFieldInvariant) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const EmField f{random_vec(rng), random_vec(rng)};
    const Vec3 v = random_velocity(rng, 0.99);
    const EmField g = boost_field(f, v);
    const double before = norm2(f.b) - norm2(f.e);
    const double after = norm2(g.b) - norm2(g.e);
    // Relative to the field energy scale so near-null fields do not blow up.
    const double scale = norm2(g.b) + norm2(g.e);
    ASSERT_LT(std::abs(after - before) / scale, 1e-10);
    ASSERT_NEAR(dot(f.e, f.b), dot(g.e, g.b), 1e-10 * scale);
  }
}

TEST(BoostField, RejectsSuperluminal) {
  EXPECT_THROW(boost_field({{}, axes::x}, {0.0, 0.0, 1.0}), DomainError);
}

TEST(RestFrameField, Examples) {
  EXPECT_EQ(rest_frame_field(axes::x, {}), axes::x);
  EXPECT_LT(rel_err(rest_frame_field(axes::x, {0.0, 0.0, 0.99}), kGamma099 * axes::x), 1e-15);
  EXPECT_LT(rel_err(rest_frame_field(axes::x, {0.99, 0.0, 0.0}), axes::x), 1e-12);
}

TEST(RestFrameField, PerpendicularScalingIsExact) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = random_velocity(rng);
    const Vec3 b = cross(v, random_vec(rng));
    const Vec3 got = rest_frame_field(b, v);
    // v.b is zero up to rounding, so allow only rounding-level slack.
    ASSERT_LT(rel_err(got, gamma(v) * b), 1e-14);
  }
}

TEST(RestFrameField, ParallelInvariance) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = random_velocity(rng, 0.99);
    const Vec3 b = 3.0 * v / norm(v);
    ASSERT_LT(rel_err(rest_frame_field(b, v), b), 1e-12);
  }
}

TEST(RestFrameField, EqualsMagneticPartOfBoost) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 500; ++i) {
    const Vec3 v = random_velocity(rng);
    const Vec3 b = random_vec(rng);
    ASSERT_LT(rel_err(rest_frame_field(b, v), boost_field({{}, b}, v).b), 1e-13);
  }
}

TEST(RestFrameField, ZeroFieldGivesZero) {
  EXPECT_EQ(rest_frame_field({}, {0.3, 0.2, 0.1}), Vec3{});
}

TEST(RestFrameFieldBoosted, ReducesToSingleBoostWithoutFrameMotion) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const Vec3 v = random_velocity(rng);
    const Vec3 b = random_vec(rng);
    ASSERT_LT(rel_err(rest_frame_field_boosted(b, v, {}), rest_frame_field(b, v)), 1e-12);
  }
}

TEST(RestFrameFieldBoosted, ParticleAtRestSeesFrameScaledField) {
  const Vec3 got = rest_frame_field_boosted(axes::x, {}, {0.0, 0.0, 0.9});
  EXPECT_LT(rel_err(got, kGamma09 * axes::x), 1e-14);
}

TEST(RestFrameFieldBoosted, MatchesTwoStepOracleAtReferencePoint) {
  const double th = std::numbers::pi / 3.0;
  const double ph = std::numbers::pi / 4.0;
  const Vec3 v = from_spherical(0.99, th, ph);
  const Vec3 beta{0.0, 0.0, 0.7};
  const Vec3 got = rest_frame_field_boosted(axes::x, v, beta);
  // Frozen from an independent two-step evaluation.
  const Vec3 frozen{10.16852718, -3.19726584, -6.82303072};
  EXPECT_LT(norm(got - frozen), 1e-7);
  const Vec3 oracle = vec(relbell_oracle::rest_field_two_step(arr(axes::x), arr(v), arr(beta)));
  EXPECT_LT(rel_err(got, oracle), 1e-12);
}

TEST(RestFrameFieldBoosted, AgreesWithComposedBoostsForOrthogonalFields) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 beta = random_velocity(rng);
    const Vec3 v = random_velocity(rng);
    const Vec3 b = cross(beta, random_vec(rng));
    const Vec3 closed = rest_frame_field_boosted(b, v, beta);
    ASSERT_LT(rel_err(closed, rest_frame_field_composed(b, v, beta)), 1e-10);
    const Vec3 oracle = vec(relbell_oracle::rest_field_two_step(arr(b), arr(v), arr(beta)));
    ASSERT_LT(rel_err(closed, oracle), 1e-10);
  }
}

TEST(RestFrameFieldBoosted, RejectsFieldAlongBoost) {
  try {
    rest_frame_field_boosted({0.6, 0.0, 0.8}, {0.1, 0.0, 0.0}, {0.0, 0.0, 0.5});
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("field not orthogonal to boost"), std::string::npos);
  }
  EXPECT_THROW(rest_frame_field_boosted(axes::x, {1.0, 0.0, 0.0}, {}), DomainError);
  EXPECT_THROW(rest_frame_field_boosted(axes::x, {}, {0.0, 0.0, -1.0}), DomainError);
}

TEST(RestFrameFieldComposed, HandlesFieldsAlongBoost) {
  // A field parallel to beta is untouched by the first boost.
  const Vec3 beta{0.0, 0.0, 0.9};
  const Vec3 v{0.5, 0.0, 0.0};
  EXPECT_LT(rel_err(rest_frame_field_composed(axes::z, v, beta), rest_frame_field(axes::z, v)),
            1e-14);
}
