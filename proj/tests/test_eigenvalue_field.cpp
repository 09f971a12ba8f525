#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "tensorp/eigenvalue_field.hpp"

using namespace tensorp;

TEST_CASE("equal-weight log average is the geometric mean") {
  const std::vector<Vec3> values{{2.0, 9.0, 0.5}, {8.0, 4.0, 2.0}};
  const std::vector<double> w{0.5, 0.5};
  const Vec3 r = interpolate_eigen_log(values, w);
  REQUIRE(std::fabs(r[0] - 4.0) < 1e-14);
  REQUIRE(std::fabs(r[1] - 6.0) < 1e-14);
  REQUIRE(std::fabs(r[2] - 1.0) < 1e-14);
}

TEST_CASE("weighted log average applies the weights in the exponent") {
  const std::vector<Vec3> values{{2.0, 2.0, 2.0}, {8.0, 8.0, 8.0}};
  const std::vector<double> w{0.25, 0.75};
  // 2^0.25 * 8^0.75 = 2^2.5
  REQUIRE(std::fabs(interpolate_eigen_log(values, w)[0] - 5.656854249492381) < 1e-14);
}

TEST_CASE("log average stays within the data range") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> lam(-3.0, 3.0), wu(1e-3, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 6);
    std::vector<Vec3> values(n);
    std::vector<double> w(n);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < 3; ++i) values[j][i] = std::exp(lam(gen));
      sum += w[j] = wu(gen);
    }
    for (double& wi : w) wi /= sum;
    const Vec3 r = interpolate_eigen_log(values, w);
    for (int i = 0; i < 3; ++i) {
      double lo = values[0][i], hi = values[0][i];
      for (const Vec3& v : values) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      REQUIRE(r[i] >= lo * (1.0 - 1e-13));
      REQUIRE(r[i] <= hi * (1.0 + 1e-13));
    }
  }
}

TEST_CASE("least squares eigenvalues reproduce linear data") {
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  std::vector<Vec3> values;
  for (const Vec3& p : points) values.push_back({1.0 + 2.0 * p[0], 5.0 - p[0], 3.0});
  const Vec3 xp{1.5, 0, 0};
  const std::vector<double> w =
      normalized_weights(points, xp, default_weight_parameter(points, xp));
  const Vec3 r = interpolate_eigen_mls(values, points, xp, w, BasisKind::linear_1d);
  REQUIRE(std::fabs(r[0] - 4.0) < 1e-12);
  REQUIRE(std::fabs(r[1] - 3.5) < 1e-12);
  REQUIRE(std::fabs(r[2] - 3.0) < 1e-12);
}

TEST_CASE("log least squares reproduces geometric progressions") {
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  const std::vector<Vec3> values{{1, 1, 1}, {2, 2, 2}, {4, 4, 4}, {8, 8, 8}};
  const Vec3 xp{1.5, 0, 0};
  const std::vector<double> w =
      normalized_weights(points, xp, default_weight_parameter(points, xp));
  const Vec3 r = interpolate_eigen_logmls(values, points, xp, w, BasisKind::linear_1d);
  // 2^1.5
  REQUIRE(std::fabs(r[0] - 2.8284271247461903) < 1e-13);
}

TEST_CASE("log schemes reject non-positive eigenvalues") {
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}};
  const std::vector<double> w{0.5, 0.5};
  for (const Vec3 bad : {Vec3{1.0, 0.0, 1.0}, Vec3{1.0, -2.0, 1.0}}) {
    const std::vector<Vec3> values{{1, 1, 1}, bad};
    try {
      interpolate_eigen_log(values, w);
      FAIL("expected rejection");
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::non_positive_eigenvalue);
    }
    REQUIRE_THROWS_AS(
        interpolate_eigen_logmls(values, points, {0.5, 0, 0}, w, BasisKind::linear_1d), Error);
  }
}

TEST_CASE("plain least squares admits negative eigenvalue data") {
  const std::vector<Vec3> points{{0, 0, 0}, {1, 0, 0}};
  const std::vector<Vec3> values{{-1.0, 2.0, 1.0}, {-3.0, 2.0, 1.0}};
  const std::vector<double> w{0.5, 0.5};
  const Vec3 r = interpolate_eigen_mls(values, points, {0.5, 0, 0}, w, BasisKind::linear_1d);
  REQUIRE(std::fabs(r[0] + 2.0) < 1e-12);
}
