#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tensorp/so3.hpp"

using namespace tensorp;

namespace {

std::mt19937_64 gen(7);

Vec3 random_vector(double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(gen), u(gen), u(gen)};
}

Mat3 random_rotation() {
  std::normal_distribution<double> n;
  Quaternion q{n(gen), {n(gen), n(gen), n(gen)}};
  return rotation_from_quat(normalized(q));
}

}  // namespace

TEST_CASE("rotation exponential matches the series exponential of the skew tensor") {
  const Vec3 cases[] = {{0.0, 0.0, 0.0},      {1e-9, -2e-9, 1e-9}, {1e-6, 0.0, 0.0},
                        {0.3, -0.4, 0.5},     {2.0, 1.0, -1.5},    {3.1, 0.2, -0.1},
                        {0.0, 0.0, 3.141592}, {-1.0, 1.0, 1.0}};
  for (const Vec3& v : cases) {
    const Mat3 series = oracle::matrix_exp(skew(v));
    REQUIRE(max_abs(exp_so3(v) - series) < 1e-13);
  }
}

TEST_CASE("rotation logarithm inverts the exponential below pi") {
  for (int i = 0; i < 500; ++i) {
    Vec3 v = random_vector(1.0);
    const double n = norm(v);
    if (n == 0.0) continue;
    std::uniform_real_distribution<double> angle(1e-8, kPi - 0.01);
    v = (angle(gen) / n) * v;
    const Vec3 back = log_so3(exp_so3(v));
    REQUIRE(max_abs(back - v) < 1e-12);
  }
}

TEST_CASE("quaternion extraction round trips and lands in the canonical hemisphere") {
  for (int i = 0; i < 500; ++i) {
    const Mat3 r = random_rotation();
    const Quaternion q = quat_from_rotation(r);
    REQUIRE(q.w >= 0.0);
    REQUIRE(std::fabs(norm(q) - 1.0) < 1e-14);
    REQUIRE(max_abs(rotation_from_quat(q) - r) < 1e-13);
  }
}

TEST_CASE("extraction stays accurate for rotations near half a turn") {
  for (int i = 0; i < 200; ++i) {
    Vec3 axis = random_vector(1.0);
    if (norm(axis) < 1e-3) axis = Vec3{1.0, 0.0, 0.0};
    const Mat3 r = rotation_about(axis, kPi - 1e-9);
    REQUIRE(max_abs(rotation_from_quat(quat_from_rotation(r)) - r) < 1e-12);
    REQUIRE(std::fabs(norm(log_so3(r)) - (kPi - 1e-9)) < 1e-7);
  }
}

TEST_CASE("half-angle convention links the two exponentials") {
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = random_vector(1.4);
    REQUIRE(max_abs(rotation_from_quat(quat_exp(0.5 * v)) - exp_so3(v)) < 1e-13);
    if (norm(v) < 0.5 * kPi - 0.01) {
      const Vec3 back = 2.0 * quat_log(quat_exp(0.5 * v));
      REQUIRE(max_abs(back - v) < 1e-13);
    }
  }
}

TEST_CASE("geodesic distance on the quaternion sphere is half the rotation angle") {
  const Vec3 axis{0.2, -0.5, 0.8};
  const Quaternion q1 = quat_from_axis_angle(axis, 0.3);
  const Quaternion q2 = quat_from_axis_angle(axis, 1.7);
  REQUIRE(std::fabs(geodesic_distance_s3(q1, q2) - 0.7) < 1e-13);
  REQUIRE(geodesic_distance_s3(q1, q1) < 1e-13);
}

TEST_CASE("direction distance is the unsigned angle between unit vectors") {
  REQUIRE(std::fabs(geodesic_distance_s2({1, 0, 0}, {1, 1, 0}) - kPi / 4.0) < 1e-13);
  REQUIRE(std::fabs(geodesic_distance_s2({1, 0, 0}, {-1, 0, 0}) - kPi) < 1e-13);
  REQUIRE(geodesic_distance_s2({0, 2, 0}, {0, 5, 0}) < 1e-13);
}

TEST_CASE("relative rotation composes back to the second operand") {
  for (int i = 0; i < 100; ++i) {
    const Mat3 r1 = random_rotation(), r2 = random_rotation();
    REQUIRE(max_abs(r1 * relative_rotation(r1, r2) - r2) < 1e-13);
  }
}

TEST_CASE("reflections and skewed tensors are rejected as rotations") {
  Mat3 reflection = Mat3::identity();
  reflection(2, 2) = -1.0;
  REQUIRE_FALSE(is_rotation(reflection));
  REQUIRE_THROWS_AS(quat_from_rotation(reflection), Error);

  Mat3 sheared = Mat3::identity();
  sheared(0, 1) = 1e-4;
  REQUIRE_FALSE(is_rotation(sheared));
  try {
    quat_from_rotation(sheared);
    FAIL("expected rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::invalid_rotation);
  }
}

TEST_CASE("zero scalar part resolves by the first nonzero vector component") {
  const Quaternion q{0.0, {-0.6, 0.8, 0.0}};
  const Quaternion c = canonical_hemisphere(q);
  REQUIRE(c.v[0] == 0.6);
  REQUIRE(c.v[1] == -0.8);
  const Quaternion p{0.0, {0.0, -1.0, 0.0}};
  REQUIRE(canonical_hemisphere(p).v[1] == 1.0);
}

TEST_CASE("logarithm of the identity antipode has no unique value") {
  REQUIRE_THROWS_AS(quat_log(Quaternion{-1.0, {0.0, 0.0, 0.0}}), Error);
}
