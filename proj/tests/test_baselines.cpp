#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tensorp/baselines.hpp"
#include "tensorp/so3.hpp"

using namespace tensorp;

namespace {

Mat3 sym2(double t11, double t12, double t22, double t33) {
  Mat3 t;
  t(0, 0) = t11;
  t(0, 1) = t(1, 0) = t12;
  t(1, 1) = t22;
  t(2, 2) = t33;
  return t;
}

}  // namespace

TEST_CASE("componentwise average of diagonal tensors") {
  const std::vector<Mat3> data{Mat3::diagonal({2, 4, 6}), Mat3::diagonal({4, 8, 2})};
  const Mat3 r = interp_euclidean(data, std::vector<double>{0.5, 0.5});
  REQUIRE(max_abs(r - Mat3::diagonal({3, 6, 4})) < 1e-15);
}

TEST_CASE("factor averaging reproduces a hand-computed blend") {
  // L1 = [1 0 0; 1 1 0; 0 1 1], L2 = [2 0 0; 0 2 0; 1 0 1];
  // the mean factor is [1.5 0 0; 0.5 1.5 0; 0.5 0.5 1].
  Mat3 l1, l2;
  l1(0, 0) = 1;
  l1(1, 0) = 1;
  l1(1, 1) = 1;
  l1(2, 1) = 1;
  l1(2, 2) = 1;
  l2(0, 0) = 2;
  l2(1, 1) = 2;
  l2(2, 0) = 1;
  l2(2, 2) = 1;
  const std::vector<Mat3> data{l1 * transpose(l1), l2 * transpose(l2)};
  const Mat3 r = interp_cholesky(data, std::vector<double>{0.5, 0.5});
  const Mat3 expected = sym2(2.25, 0.75, 2.5, 1.5);
  Mat3 full = expected;
  full(0, 2) = full(2, 0) = 0.75;
  full(1, 2) = full(2, 1) = 1.0;
  REQUIRE(max_abs(r - full) < 1e-14);
}

TEST_CASE("endpoint weights return the endpoint tensors") {
  const std::vector<Mat3> data{sym2(3, 1, 2, 1), sym2(5, -1, 4, 2)};
  for (auto [w0, idx] : {std::pair{1.0, 0}, std::pair{0.0, 1}}) {
    const std::vector<double> w{w0, 1.0 - w0};
    REQUIRE(max_abs(interp_euclidean(data, w) - data[idx]) < 1e-14);
    REQUIRE(max_abs(interp_cholesky(data, w) - data[idx]) < 1e-13);
    REQUIRE(max_abs(interp_log_euclidean(data, w) - data[idx]) < 1e-12);
    REQUIRE(max_abs(interp_log_cholesky(data, w) - data[idx]) < 1e-13);
  }
}

TEST_CASE("spectral log average of coaxial tensors is the geometric mean") {
  const double e2 = std::exp(2.0);
  const std::vector<Mat3> data{Mat3::identity(), Mat3::diagonal({e2, 1, 1})};
  const Mat3 r = interp_log_euclidean(data, std::vector<double>{0.5, 0.5});
  REQUIRE(max_abs(r - Mat3::diagonal({std::exp(1.0), 1, 1})) < 1e-12);
}

TEST_CASE("factor log average of diagonal tensors is the geometric mean") {
  const std::vector<Mat3> data{Mat3::diagonal({4, 1, 9}), Mat3::diagonal({9, 1, 4})};
  const Mat3 r = interp_log_cholesky(data, std::vector<double>{0.5, 0.5});
  REQUIRE(max_abs(r - Mat3::diagonal({6, 1, 6})) < 1e-13);
}

TEST_CASE("baselines reject asymmetric and indefinite input") {
  Mat3 skewed = Mat3::identity();
  skewed(0, 1) = 0.3;
  const std::vector<double> w{1.0};
  // The componentwise average carries no structure and so rejects nothing.
  REQUIRE(max_abs(interp_euclidean(std::vector<Mat3>{skewed}, w) - skewed) == 0.0);
  for (auto* f : {interp_cholesky, interp_log_euclidean, interp_log_cholesky}) {
    try {
      f(std::vector<Mat3>{skewed}, w);
      FAIL("expected rejection");
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::not_spd);
    }
  }
  const Mat3 indefinite = Mat3::diagonal({1.0, -0.5, 1.0});
  REQUIRE_THROWS_AS(interp_cholesky(std::vector<Mat3>{indefinite}, w), Error);
  REQUIRE_THROWS_AS(interp_log_euclidean(std::vector<Mat3>{indefinite}, w), Error);
  REQUIRE_THROWS_AS(interp_log_cholesky(std::vector<Mat3>{indefinite}, w), Error);
}

TEST_CASE("anisotropy and invariant metrics on known spectra") {
  const Metrics iso = compute_metrics(Mat3::diagonal({2, 2, 2}));
  REQUIRE(std::fabs(iso.fa) < 1e-14);
  REQUIRE(std::fabs(iso.ha) < 1e-14);
  REQUIRE(std::fabs(iso.determinant - 8.0) < 1e-12);
  REQUIRE(std::fabs(iso.trace - 6.0) < 1e-13);
  REQUIRE(std::fabs(iso.mean_eigenvalue - 2.0) < 1e-13);

  const Metrics aniso = compute_metrics(Mat3::diagonal({10, 1, 1}));
  // sqrt(3 * 54 / (2 * 102))
  REQUIRE(std::fabs(aniso.fa - 0.8911327886790068) < 1e-13);
  REQUIRE(std::fabs(aniso.ha - std::log(10.0)) < 1e-13);

  const Metrics second = compute_metrics(Mat3::diagonal({20, 4, 1}));
  REQUIRE(std::fabs(second.fa - 0.8663714678956671) < 1e-13);
}

TEST_CASE("primary direction overlap measures orientation agreement") {
  const Mat3 a = Mat3::diagonal({5, 2, 1});
  REQUIRE(std::fabs(orientation_cosine(a, a) - 1.0) < 1e-13);

  const Mat3 r = rotation_about({0, 0, 1}, kPi / 4.0);
  const Mat3 b = transpose(r) * Mat3::diagonal({5, 2, 1}) * r;
  REQUIRE(std::fabs(orientation_cosine(a, b) - std::cos(kPi / 4.0)) < 1e-12);

  // Sign of the eigenvector must not matter.
  const Mat3 r2 = rotation_about({0, 0, 1}, kPi - 0.2);
  const Mat3 c = transpose(r2) * Mat3::diagonal({5, 2, 1}) * r2;
  REQUIRE(std::fabs(orientation_cosine(a, c) - std::cos(0.2)) < 1e-12);

  std::vector<std::string> warnings;
  orientation_cosine(Mat3::diagonal({3, 3, 1}), a, &warnings);
  REQUIRE_FALSE(warnings.empty());
}
