#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tensorp/rotation_field.hpp"

using namespace tensorp;

namespace {

std::mt19937_64 gen(29);

Mat3 random_rotation() {
  std::normal_distribution<double> n;
  Quaternion q{n(gen), {n(gen), n(gen), n(gen)}};
  return rotation_from_quat(normalized(q));
}

}  // namespace

TEST_CASE("nearest point index breaks ties toward the lower index") {
  const std::vector<Vec3> points{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}};
  REQUIRE(nearest_point_index(points, {0.9, 0, 0}) == 0);
  REQUIRE(nearest_point_index(points, {0, 0, 0}) == 0);
  REQUIRE(nearest_point_index(points, {0, 0.9, 0}) == 2);
}

TEST_CASE("relative frames recompose to the input rotations") {
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Mat3> rotations;
    for (int j = 0; j < 5; ++j) rotations.push_back(random_rotation());
    const RelativeFrame frame = build_relative_frame(rotations, 2);
    REQUIRE(frame.reference == 2);
    REQUIRE(norm(frame.vectors[2]) < 1e-14);
    REQUIRE(std::fabs(frame.quats[2].w - 1.0) < 1e-14);
    for (std::size_t j = 0; j < rotations.size(); ++j) {
      REQUIRE(max_abs(frame.base * exp_so3(frame.vectors[j]) - rotations[j]) < 1e-12);
      REQUIRE(max_abs(frame.base * rotation_from_quat(frame.quats[j]) - rotations[j]) < 1e-12);
      REQUIRE(dot(frame.quats[2], frame.quats[j]) >= -kHemisphereTol);
    }
  }
}

TEST_CASE("two-point spherical average lies on the connecting geodesic") {
  const Vec3 axis{0.3, -0.2, 0.93};
  for (double a2 : {0.4, 1.9, 2.9}) {
    const std::vector<Mat3> rotations{rotation_about(axis, 0.1), rotation_about(axis, a2)};
    const RelativeFrame frame = build_relative_frame(rotations, 0);
    for (double w : {0.0, 0.25, 0.5, 0.8, 1.0}) {
      const std::vector<double> weights{1.0 - w, w};
      const Quaternion mean = swa_mean(frame.quats, weights, 0);
      const Mat3 got = frame.base * rotation_from_quat(mean);
      REQUIRE(max_abs(got - oracle::coaxial_blend(axis, 0.1, a2, w)) < 1e-11);
    }
  }
}

TEST_CASE("coaxial spherical average matches the weighted angle mean") {
  const Vec3 axis{0, 0, 1};
  const std::vector<Mat3> rotations{rotation_about(axis, 0.2), rotation_about(axis, 0.9),
                                    rotation_about(axis, 1.6)};
  const RelativeFrame frame = build_relative_frame(rotations, 1);
  const std::vector<double> weights{0.2, 0.5, 0.3};
  const Quaternion mean = swa_mean(frame.quats, weights, 1);
  const Mat3 got = frame.base * rotation_from_quat(mean);
  const double angle = 0.2 * 0.2 + 0.5 * 0.9 + 0.3 * 1.6;
  REQUIRE(max_abs(got - rotation_about(axis, angle)) < 1e-11);
}

TEST_CASE("spherical average rejects data beyond the starting hemisphere") {
  const std::vector<Quaternion> quats{Quaternion::identity(),
                                      {-0.5, {std::sqrt(0.75), 0.0, 0.0}}};
  const std::vector<double> weights{0.5, 0.5};
  try {
    swa_mean(quats, weights, 0);
    FAIL("expected rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::hemisphere_violation);
  }
}

TEST_CASE("spherical average reports the iteration count") {
  const std::vector<Mat3> rotations{rotation_about({0, 0, 1}, 0.0),
                                    rotation_about({0, 0, 1}, 1.0)};
  const RelativeFrame frame = build_relative_frame(rotations, 0);
  int iterations = -1;
  swa_mean(frame.quats, std::vector<double>{0.5, 0.5}, 0, &iterations);
  REQUIRE(iterations >= 1);
  REQUIRE(iterations < kSwaMaxIterations);
}

TEST_CASE("geodesic blend hits both endpoints and the closed coaxial form") {
  for (int trial = 0; trial < 100; ++trial) {
    const Quaternion q1 = quat_from_rotation(random_rotation());
    Quaternion q2 = quat_from_rotation(random_rotation());
    if (dot(q1, q2) < 0.0) q2 = negate(q2);
    REQUIRE(max_abs(rotation_from_quat(slerp(q1, q2, 0.0)) - rotation_from_quat(q1)) < 1e-13);
    REQUIRE(max_abs(rotation_from_quat(slerp(q1, q2, 1.0)) - rotation_from_quat(q2)) < 1e-12);
    // Against the right-translated form R1 exp(w log(R1^T R2)).
    const Mat3 r1 = rotation_from_quat(q1), r2 = rotation_from_quat(q2);
    const Vec3 rel = log_so3(relative_rotation(r1, r2));
    for (double w : {0.3, 0.7})
      REQUIRE(max_abs(rotation_from_quat(slerp(q1, q2, w)) - r1 * exp_so3(w * rel)) < 1e-12);
  }
}

TEST_CASE("geodesic blend rejects antipodal endpoints") {
  const Quaternion q1 = Quaternion::identity();
  const Quaternion q2{-1.0 + 1e-12, {1e-7, 0, 0}};
  REQUIRE_THROWS_AS(slerp(q1, normalized(q2), 0.5), Error);
}

TEST_CASE("least squares rotation interpolation is exact for coaxial linear fields") {
  // Relative rotation vectors of a coaxial field are linear in x, so a linear
  // fit reproduces the field exactly between the samples.
  const Vec3 axis{0.48, -0.6, 0.64};
  const auto field = [&](double x) { return rotation_about(axis, 0.3 + 0.5 * x); };
  std::vector<Vec3> points;
  std::vector<Mat3> rotations;
  for (double x : {0.0, 1.0, 2.0, 3.0}) {
    points.push_back({x, 0, 0});
    rotations.push_back(field(x));
  }
  for (double xq : {0.5, 1.25, 2.75}) {
    const Vec3 xp{xq, 0, 0};
    const std::vector<double> w =
        normalized_weights(points, xp, default_weight_parameter(points, xp));
    const Mat3 via_fit =
        interpolate_rotation_r(rotations, points, xp, w, BasisKind::linear_1d);
    const Mat3 via_swa = interpolate_rotation_q(rotations, points, xp, w);
    REQUIRE(max_abs(via_fit - field(xq)) < 1e-11);
    // The spherical average weighs all four points, so it only agrees with
    // the exact field where the weighting is symmetric.
    REQUIRE(is_rotation(via_swa, 1e-10));
  }
  const Vec3 mid{1.5, 0, 0};
  const std::vector<double> w =
      normalized_weights(points, mid, default_weight_parameter(points, mid));
  REQUIRE(max_abs(interpolate_rotation_q(rotations, points, mid, w) - field(1.5)) < 1e-10);
}

TEST_CASE("constant rotation fields are reproduced by both schemes") {
  const Mat3 r0 = random_rotation();
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const std::vector<Mat3> rotations(4, r0);
  const Vec3 xp{0.3, 0.6, 0};
  const std::vector<double> w =
      normalized_weights(points, xp, default_weight_parameter(points, xp));
  REQUIRE(max_abs(interpolate_rotation_r(rotations, points, xp, w, BasisKind::bilinear_2d) -
                  r0) < 1e-13);
  REQUIRE(max_abs(interpolate_rotation_q(rotations, points, xp, w) - r0) < 1e-13);
}

TEST_CASE("rotation fit degrades its basis only when allowed") {
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}};
  const std::vector<Mat3> rotations{rotation_about({0, 0, 1}, 0.1),
                                    rotation_about({0, 0, 1}, 0.4)};
  const Vec3 xp{0.5, 0, 0};
  const std::vector<double> w =
      normalized_weights(points, xp, default_weight_parameter(points, xp));
  std::vector<std::string> warnings;
  const Mat3 got = interpolate_rotation_r(rotations, points, xp, w, BasisKind::quadratic_1d,
                                          true, &warnings);
  REQUIRE(is_rotation(got, 1e-12));
  REQUIRE_FALSE(warnings.empty());
  REQUIRE_THROWS_AS(
      interpolate_rotation_r(rotations, points, xp, w, BasisKind::quadratic_1d, false),
      Error);
}
