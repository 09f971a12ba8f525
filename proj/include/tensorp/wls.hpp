#pragma once
// Weighted / moving least squares machinery shared by the rotation-vector and
// eigenvalue interpolation paths: polynomial bases, normalized exponential
// weights, moment-matrix assembly and solve.
//
// Fits always run in the local frame centered at the evaluation point, so
// evaluating a fit at the evaluation point returns the constant coefficient.
// All fits carry three channels at once (one per vector component).

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"

namespace tensorp {

enum class BasisKind { constant, linear_1d, quadratic_1d, bilinear_2d, quadratic_2d, quadratic_3d };

inline constexpr int kMaxBasisSize = 10;
inline constexpr double kConditionLimit = 1e12;

inline int basis_size(BasisKind kind) {
  switch (kind) {
    case BasisKind::constant: return 1;
    case BasisKind::linear_1d: return 2;
    case BasisKind::quadratic_1d: return 3;
    case BasisKind::bilinear_2d: return 4;
    case BasisKind::quadratic_2d: return 8;
    case BasisKind::quadratic_3d: return 10;
  }
  return 1;
}

inline int basis_eval(BasisKind kind, const Vec3& p, double out[kMaxBasisSize]) {
  const double x = p[0], y = p[1], z = p[2];
  switch (kind) {
    case BasisKind::constant:
      out[0] = 1.0;
      return 1;
    case BasisKind::linear_1d:
      out[0] = 1.0;
      out[1] = x;
      return 2;
    case BasisKind::quadratic_1d:
      out[0] = 1.0;
      out[1] = x;
      out[2] = x * x;
      return 3;
    case BasisKind::bilinear_2d:
      out[0] = 1.0;
      out[1] = x;
      out[2] = y;
      out[3] = x * y;
      return 4;
    case BasisKind::quadratic_2d:
      out[0] = 1.0;
      out[1] = x;
      out[2] = y;
      out[3] = x * x;
      out[4] = y * y;
      out[5] = x * y;
      out[6] = x * x * y;
      out[7] = x * y * y;
      return 8;
    case BasisKind::quadratic_3d:
      out[0] = 1.0;
      out[1] = x;
      out[2] = y;
      out[3] = z;
      out[4] = x * x;
      out[5] = y * y;
      out[6] = z * z;
      out[7] = x * y;
      out[8] = y * z;
      out[9] = x * z;
      return 10;
  }
  return 0;
}

// Next lower basis in the degradation chain used for sparse neighborhoods.
inline BasisKind degrade_basis(BasisKind kind) {
  switch (kind) {
    case BasisKind::quadratic_3d: return BasisKind::quadratic_2d;
    case BasisKind::quadratic_2d: return BasisKind::bilinear_2d;
    case BasisKind::bilinear_2d: return BasisKind::linear_1d;
    case BasisKind::quadratic_1d: return BasisKind::linear_1d;
    case BasisKind::linear_1d: return BasisKind::constant;
    case BasisKind::constant: return BasisKind::constant;
  }
  return BasisKind::constant;
}

// Largest basis in the chain starting at `requested` that n points can carry.
inline BasisKind effective_basis(BasisKind requested, std::size_t n, bool* degraded = nullptr) {
  BasisKind kind = requested;
  while (static_cast<std::size_t>(basis_size(kind)) > n && kind != BasisKind::constant)
    kind = degrade_basis(kind);
  if (degraded) *degraded = kind != requested;
  return kind;
}

// c such that the farthest point carries relative weight exp(-1); zero when
// every point coincides with the evaluation point.
inline double default_weight_parameter(std::span<const Vec3> points, const Vec3& xp) {
  double max_sq = 0.0;
  for (const Vec3& p : points) max_sq = std::max(max_sq, squared_norm(p - xp));
  return max_sq > 0.0 ? 1.0 / max_sq : 0.0;
}

// Normalized exponential weights exp(-c ||x_j - x_p||^2) / sum. The shared
// exponent shift cancels in the quotient and keeps the sum away from zero.
inline std::vector<double> normalized_weights(std::span<const Vec3> points, const Vec3& xp,
                                              double c) {
  if (points.empty()) fail(errc::empty_data_set, "normalized_weights: no points given");
  std::vector<double> w(points.size());
  double shift = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    w[j] = -c * squared_norm(points[j] - xp);
    shift = j == 0 ? w[j] : std::max(shift, w[j]);
  }
  double sum = 0.0;
  for (double& wj : w) {
    wj = std::exp(wj - shift);
    sum += wj;
  }
  for (double& wj : w) wj /= sum;
  return w;
}

struct WlsFit {
  BasisKind basis = BasisKind::constant;
  int m = 1;
  double condition = 1.0;
  double inv_scale = 1.0;  // local coordinates are divided by the neighborhood radius
  std::array<Vec3, kMaxBasisSize> coeff{};  // coeff[t] holds the three channels of term t
};

namespace detail {

// Full-pivot Gaussian elimination on P a = b (three channels at once).
// Returns false when a pivot collapses entirely.
inline bool full_pivot_solve(double p[kMaxBasisSize][kMaxBasisSize], Vec3 b[kMaxBasisSize],
                             int m, double* condition, std::array<Vec3, kMaxBasisSize>* out) {
  int col_of[kMaxBasisSize];
  for (int i = 0; i < m; ++i) col_of[i] = i;
  double pivot_max = 0.0, pivot_min = 0.0;

  for (int k = 0; k < m; ++k) {
    int pr = k, pc = k;
    double best = 0.0;
    for (int i = k; i < m; ++i)
      for (int j = k; j < m; ++j)
        if (std::fabs(p[i][j]) > best) {
          best = std::fabs(p[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0.0) return false;
    if (k == 0) pivot_max = pivot_min = best;
    pivot_max = std::max(pivot_max, best);
    pivot_min = std::min(pivot_min, best);
    if (pr != k) {
      for (int j = 0; j < m; ++j) std::swap(p[k][j], p[pr][j]);
      std::swap(b[k], b[pr]);
    }
    if (pc != k) {
      for (int i = 0; i < m; ++i) std::swap(p[i][k], p[i][pc]);
      std::swap(col_of[k], col_of[pc]);
    }
    for (int i = k + 1; i < m; ++i) {
      const double f = p[i][k] / p[k][k];
      for (int j = k; j < m; ++j) p[i][j] -= f * p[k][j];
      b[i] -= f * b[k];
    }
  }
  *condition = pivot_max / pivot_min;
  for (int k = m - 1; k >= 0; --k) {
    Vec3 acc = b[k];
    for (int j = k + 1; j < m; ++j) acc -= p[k][j] * (*out)[col_of[j]];
    (*out)[col_of[k]] = acc / p[k][k];
  }
  return true;
}

}  // namespace detail

// Fit of three value channels against the basis, in the local frame centered
// at xp and scaled by the neighborhood radius (the same fit in exact
// arithmetic; without the scaling the moment matrix condition would grow
// like a power of the spacing and sink fine neighborhoods). Solved by
// unpivoted LDL^T (the moment matrix is symmetric positive definite for
// well-posed layouts), with full-pivot elimination as fallback; the
// condition estimate comes from the factor diagonals respectively pivots.
inline WlsFit wls_fit(std::span<const Vec3> points, const Vec3& xp,
                      std::span<const double> weights, std::span<const Vec3> values,
                      BasisKind basis) {
  const std::size_t n = points.size();
  const int m = basis_size(basis);
  if (n == 0) fail(errc::empty_data_set, "wls_fit: no data points");
  if (n < static_cast<std::size_t>(m))
    fail(errc::singular_moment, "wls_fit: fewer data points than basis functions");

  double radius = 0.0;
  for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, norm(points[j] - xp));

  WlsFit fit;
  fit.basis = basis;
  fit.m = m;
  fit.inv_scale = radius > 0.0 ? 1.0 / radius : 1.0;

  double p[kMaxBasisSize][kMaxBasisSize] = {};
  Vec3 b[kMaxBasisSize];
  double row[kMaxBasisSize];
  for (std::size_t j = 0; j < n; ++j) {
    basis_eval(basis, fit.inv_scale * (points[j] - xp), row);
    for (int s = 0; s < m; ++s) {
      for (int t = s; t < m; ++t) p[s][t] += weights[j] * row[s] * row[t];
      b[s] += (weights[j] * row[s]) * values[j];
    }
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < s; ++t) p[s][t] = p[t][s];

  // LDL^T: L unit lower triangular in place, d on the diagonal.
  double ldl[kMaxBasisSize][kMaxBasisSize];
  double d[kMaxBasisSize];
  bool ok = true;
  double dmax = 0.0, dmin = 0.0;
  for (int k = 0; k < m && ok; ++k) {
    double dk = p[k][k];
    for (int s = 0; s < k; ++s) dk -= ldl[k][s] * ldl[k][s] * d[s];
    d[k] = dk;
    if (k == 0) dmax = dmin = dk;
    dmax = std::max(dmax, dk);
    dmin = std::min(dmin, dk);
    if (!(dk > 0.0) || dk < dmax * 1e-15) {
      ok = false;
      break;
    }
    for (int i = k + 1; i < m; ++i) {
      double v = p[i][k];
      for (int s = 0; s < k; ++s) v -= ldl[i][s] * ldl[k][s] * d[s];
      ldl[i][k] = v / dk;
    }
  }

  if (ok) {
    fit.condition = dmax / dmin;
    if (fit.condition > kConditionLimit)
      fail(errc::singular_moment, "wls_fit: moment matrix condition number exceeds limit");
    std::array<Vec3, kMaxBasisSize> y{};
    for (int i = 0; i < m; ++i) {
      y[i] = b[i];
      for (int s = 0; s < i; ++s) y[i] -= ldl[i][s] * y[s];
    }
    for (int i = m - 1; i >= 0; --i) {
      Vec3 acc = y[i] / d[i];
      for (int s = i + 1; s < m; ++s) acc -= ldl[s][i] * fit.coeff[s];
      fit.coeff[i] = acc;
    }
    return fit;
  }

  if (!detail::full_pivot_solve(p, b, m, &fit.condition, &fit.coeff) ||
      fit.condition > kConditionLimit)
    fail(errc::singular_moment, "wls_fit: moment matrix is numerically singular");
  return fit;
}

inline Vec3 wls_evaluate(const WlsFit& fit, const Vec3& local = {}) {
  double row[kMaxBasisSize];
  basis_eval(fit.basis, fit.inv_scale * local, row);
  Vec3 acc;
  for (int t = 0; t < fit.m; ++t) acc += row[t] * fit.coeff[t];
  return acc;
}

}  // namespace tensorp
