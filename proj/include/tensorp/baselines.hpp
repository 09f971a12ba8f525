#pragma once
// Literature interpolants for symmetric positive definite tensors, used as
// comparison baselines: componentwise average (E), averaged Cholesky factors
// (C), log-Euclidean (LOG-E), and log-Cholesky (LOG-C). Also the scalar
// metrics used to compare schemes.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/symmetric_eigen.hpp"

namespace tensorp {

namespace detail {

inline void require_symmetric_input(const Mat3& t, const char* who) {
  const double scale = std::max(1.0, max_abs(t));
  if (max_abs(t - transpose(t)) > 1e-10 * scale)
    fail(errc::not_spd, std::string(who) + ": input is not symmetric");
}

}  // namespace detail

// Lower-triangular Cholesky factor with positive diagonal, L L^T = input.
inline Mat3 cholesky_factor(const Mat3& t, const char* who = "cholesky_factor") {
  detail::require_symmetric_input(t, who);
  Mat3 l;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = t(i, j);
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(sum > 0.0))
          fail(errc::not_spd, std::string(who) + ": pivot is not positive");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

inline Mat3 interp_euclidean(std::span<const Mat3> data, std::span<const double> weights) {
  if (data.empty()) fail(errc::empty_data_set, "interp_euclidean: no data");
  Mat3 acc;
  for (std::size_t j = 0; j < data.size(); ++j) acc += weights[j] * data[j];
  return acc;
}

inline Mat3 interp_cholesky(std::span<const Mat3> data, std::span<const double> weights) {
  if (data.empty()) fail(errc::empty_data_set, "interp_cholesky: no data");
  Mat3 l;
  for (std::size_t j = 0; j < data.size(); ++j)
    l += weights[j] * cholesky_factor(data[j], "interp_cholesky");
  return l * transpose(l);
}

namespace detail {

// Spectral function application for symmetric input; eigenvectors are kept
// as rows, so the reconstruction reads rows^T f(values) rows.
template <class F>
Mat3 spectral_map(const Mat3& t, F&& f, const char* who) {
  require_symmetric_input(t, who);
  const SymmetricEigen e = symmetric_eigen(t);
  const Mat3 q = Mat3::from_rows(e.vectors[0], e.vectors[1], e.vectors[2]);
  return transpose(q) * Mat3::diagonal(Vec3{f(e.values[0]), f(e.values[1]), f(e.values[2])}) * q;
}

}  // namespace detail

inline Mat3 interp_log_euclidean(std::span<const Mat3> data, std::span<const double> weights) {
  if (data.empty()) fail(errc::empty_data_set, "interp_log_euclidean: no data");
  Mat3 acc;
  for (std::size_t j = 0; j < data.size(); ++j) {
    const Mat3 log_t = detail::spectral_map(
        data[j],
        [](double v) {
          if (!(v > 0.0)) fail(errc::not_spd, "interp_log_euclidean: eigenvalue not positive");
          return std::log(v);
        },
        "interp_log_euclidean");
    acc += weights[j] * log_t;
  }
  return detail::spectral_map(acc, [](double v) { return std::exp(v); }, "interp_log_euclidean");
}

// Diagonal of the Cholesky factor averaged in the log domain, strict lower
// part averaged linearly.
inline Mat3 interp_log_cholesky(std::span<const Mat3> data, std::span<const double> weights) {
  if (data.empty()) fail(errc::empty_data_set, "interp_log_cholesky: no data");
  Mat3 l;
  for (std::size_t j = 0; j < data.size(); ++j) {
    const Mat3 lj = cholesky_factor(data[j], "interp_log_cholesky");
    for (int i = 0; i < 3; ++i) {
      l(i, i) += weights[j] * std::log(lj(i, i));
      for (int k = 0; k < i; ++k) l(i, k) += weights[j] * lj(i, k);
    }
  }
  for (int i = 0; i < 3; ++i) l(i, i) = std::exp(l(i, i));
  return l * transpose(l);
}

struct Metrics {
  double determinant = 0.0;
  double trace = 0.0;
  double fa = 0.0;   // fractional anisotropy, in [0, 1]
  double ha = 0.0;   // ln(largest / smallest eigenvalue)
  double mean_eigenvalue = 0.0;
};

inline Metrics compute_metrics(const Mat3& t) {
  detail::require_symmetric_input(t, "compute_metrics");
  const SymmetricEigen e = symmetric_eigen(t);
  for (double v : e.values)
    if (!(v > 0.0)) fail(errc::not_spd, "compute_metrics: eigenvalue not positive");
  Metrics m;
  m.determinant = determinant(t);
  m.trace = trace(t);
  m.mean_eigenvalue = (e.values[0] + e.values[1] + e.values[2]) / 3.0;
  double dev = 0.0, sq = 0.0;
  for (double v : e.values) {
    dev += (v - m.mean_eigenvalue) * (v - m.mean_eigenvalue);
    sq += v * v;
  }
  m.fa = std::sqrt(3.0 * dev / (2.0 * sq));
  m.ha = std::log(e.values[0] / e.values[2]);
  return m;
}

// Unsigned cosine between the primary eigenvector directions of two
// symmetric tensors. Warns when either primary eigenvalue is not isolated,
// in which case the direction itself is arbitrary.
inline double orientation_cosine(const Mat3& t1, const Mat3& t2,
                                 std::vector<std::string>* warnings = nullptr) {
  const SymmetricEigen e1 = symmetric_eigen(t1);
  const SymmetricEigen e2 = symmetric_eigen(t2);
  if (warnings) {
    const auto isolated = [](const SymmetricEigen& e) {
      const double scale = std::max(std::fabs(e.values[0]), std::fabs(e.values[2]));
      return e.values[0] - e.values[1] > 1e-9 * std::max(1.0, scale);
    };
    if (!isolated(e1) || !isolated(e2))
      warnings->push_back("orientation_cosine: primary eigenvalue is degenerate");
  }
  return std::fabs(dot(e1.vectors[0], e2.vectors[0]));
}

}  // namespace tensorp
