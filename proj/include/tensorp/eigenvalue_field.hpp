#pragma once
// Eigenvalue interpolation: logarithmic weighted averaging and the two least
// squares variants (plain and log-transformed). Channels are independent; the
// least squares variants share one moment factorization across channels.

#include <cmath>
#include <span>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/wls.hpp"

namespace tensorp {

enum class EigenScheme { log_mean, poly_fit, log_poly_fit };

// Guard against zero, negative, and denormal-collapse inputs before taking
// logs. Clamping instead would silently fabricate positive definiteness.
inline constexpr double kEigenvalueFloor = 1e-300;

namespace detail {

inline Vec3 log_channels(const Vec3& lambda, const char* who) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!(lambda[i] > kEigenvalueFloor))
      fail(errc::non_positive_eigenvalue, std::string(who) + ": eigenvalue is not positive");
    out[i] = std::log(lambda[i]);
  }
  return out;
}

}  // namespace detail

// exp(sum w_j ln lambda_j) per channel. Weights must be positive and sum to
// one; the result then lies between the channel minimum and maximum.
inline Vec3 interpolate_eigen_log(std::span<const Vec3> values, std::span<const double> weights) {
  if (values.empty()) fail(errc::empty_data_set, "interpolate_eigen_log: no data");
  Vec3 acc;
  for (std::size_t j = 0; j < values.size(); ++j)
    acc += weights[j] * detail::log_channels(values[j], "interpolate_eigen_log");
  return Vec3{std::exp(acc[0]), std::exp(acc[1]), std::exp(acc[2])};
}

// Channelwise weighted least squares on the raw eigenvalues. May produce
// negative values between positive data; that is the point of the variant
// comparison, not a defect.
inline Vec3 interpolate_eigen_mls(std::span<const Vec3> values, std::span<const Vec3> points,
                                  const Vec3& xp, std::span<const double> weights,
                                  BasisKind basis) {
  return wls_evaluate(wls_fit(points, xp, weights, values, basis));
}

// Least squares on the logarithms, exponentiated afterwards. Strictly
// positive by construction and interpolating when the fit is square.
inline Vec3 interpolate_eigen_logmls(std::span<const Vec3> values, std::span<const Vec3> points,
                                     const Vec3& xp, std::span<const double> weights,
                                     BasisKind basis) {
  if (values.empty()) fail(errc::empty_data_set, "interpolate_eigen_logmls: no data");
  std::vector<Vec3> logs(values.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    logs[j] = detail::log_channels(values[j], "interpolate_eigen_logmls");
  const Vec3 fitted = wls_evaluate(wls_fit(points, xp, weights, logs, basis));
  return Vec3{std::exp(fitted[0]), std::exp(fitted[1]), std::exp(fitted[2])};
}

}  // namespace tensorp
