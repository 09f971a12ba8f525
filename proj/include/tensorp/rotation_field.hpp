#pragma once
// Rotation interpolation over scattered data points. Both schemes work in a
// relative frame anchored at the data point nearest the evaluation point:
// the least squares scheme fits the components of the relative rotation
// vectors, the quaternion scheme computes a spherical weighted average.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tensorp/decomposition.hpp"
#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/so3.hpp"
#include "tensorp/wls.hpp"

namespace tensorp {

inline constexpr double kSwaTol = 1e-12;
inline constexpr int kSwaMaxIterations = 100;
inline constexpr double kHemisphereTol = 1e-9;

// Index of the data point nearest to x (ties resolve to the lowest index).
inline std::size_t nearest_point_index(std::span<const Vec3> points, const Vec3& x) {
  if (points.empty()) fail(errc::empty_data_set, "nearest_point_index: no points");
  std::size_t best = 0;
  double best_sq = squared_norm(points[0] - x);
  for (std::size_t j = 1; j < points.size(); ++j) {
    const double sq = squared_norm(points[j] - x);
    if (sq < best_sq) {
      best_sq = sq;
      best = j;
    }
  }
  return best;
}

// Rotations re-expressed against the rotation at the reference point.
// base * exp(vectors[j]) recovers the input, and quats[j] all lie in the
// hemisphere of the reference (whose own relative quaternion is identity).
struct RelativeFrame {
  std::size_t reference = 0;
  Mat3 base = Mat3::identity();
  std::vector<Vec3> vectors;
  std::vector<Quaternion> quats;
};

inline RelativeFrame build_relative_frame(std::span<const Mat3> rotations,
                                          std::size_t reference_index) {
  if (rotations.empty()) fail(errc::empty_data_set, "build_relative_frame: no rotations");
  for (const Mat3& r : rotations) require_rotation(r, "build_relative_frame");
  RelativeFrame frame;
  frame.reference = reference_index;
  frame.base = rotations[reference_index];
  frame.vectors.reserve(rotations.size());
  frame.quats.reserve(rotations.size());
  for (const Mat3& r : rotations) {
    const Mat3 rel = relative_rotation(frame.base, r);
    frame.vectors.push_back(log_so3(rel));
    frame.quats.push_back(quat_from_rotation(rel));
  }
  frame.quats = orient_quaternions(std::move(frame.quats), reference_index);
  return frame;
}

// Spherical weighted average on S3: the fixed point iteration
// q <- q exp(sum_j w_j log(q^-1 q_j)), which contracts for data confined to
// the hemisphere of the starting iterate. The tangent update is the negative
// gradient of the weighted geodesic objective, so its norm doubles as the
// convergence measure; it stays resolvable down to rounding, unlike objective
// differences, which fall below one ulp long before the update does.
inline Quaternion swa_mean(std::span<const Quaternion> quats, std::span<const double> weights,
                           std::size_t init_index, int* iterations = nullptr) {
  if (quats.empty()) fail(errc::empty_data_set, "swa_mean: no quaternions");
  for (const Quaternion& q : quats)
    if (dot(quats[init_index], q) < -kHemisphereTol)
      fail(errc::hemisphere_violation, "swa_mean: data spans more than a hemisphere");

  Quaternion q = normalized(quats[init_index]);
  for (int it = 0; it < kSwaMaxIterations; ++it) {
    if (iterations) *iterations = it;
    Vec3 u;
    for (std::size_t j = 0; j < quats.size(); ++j)
      u += weights[j] * quat_log(quat_product(conjugate(q), quats[j]));
    if (norm(u) < kSwaTol) return q;
    q = normalized(quat_product(q, quat_exp(u)));
  }
  fail(errc::no_convergence, "swa_mean: iteration limit reached");
}

// Geodesic blend (q2 q1^-1)^w q1. Rejects numerically antipodal pairs, for
// which the connecting geodesic is not unique.
inline Quaternion slerp(const Quaternion& q1, const Quaternion& q2, double w) {
  if (dot(q1, q2) <= -1.0 + kHemisphereTol)
    fail(errc::antipodal_pair, "slerp: endpoints are antipodal");
  const Quaternion rel = quat_product(q2, conjugate(q1));
  return quat_product(quat_exp(w * quat_log(rel)), q1);
}

// Componentwise least squares fit of the relative rotation vectors,
// evaluated at x and wrapped back through the exponential map.
inline Mat3 interpolate_rotation_r(std::span<const Mat3> rotations, std::span<const Vec3> points,
                                   const Vec3& xp, std::span<const double> weights,
                                   BasisKind basis, bool allow_degrade = true,
                                   std::vector<std::string>* warnings = nullptr) {
  const RelativeFrame frame = build_relative_frame(rotations, nearest_point_index(points, xp));
  BasisKind kind = basis;
  if (allow_degrade) {
    bool degraded = false;
    kind = effective_basis(basis, rotations.size(), &degraded);
    if (degraded && warnings)
      warnings->push_back("rotation fit: basis reduced to fit " +
                          std::to_string(rotations.size()) + " data points");
  }
  const WlsFit fit = wls_fit(points, xp, weights, frame.vectors, kind);
  return frame.base * exp_so3(wls_evaluate(fit));
}

// Spherical weighted average of the relative quaternions, mapped back to the
// data frame. The nearest data point anchors the frame, so its relative
// quaternion is the identity and also serves as the starting iterate.
inline Mat3 interpolate_rotation_q(std::span<const Mat3> rotations, std::span<const Vec3> points,
                                   const Vec3& xp, std::span<const double> weights) {
  const std::size_t reference = nearest_point_index(points, xp);
  const RelativeFrame frame = build_relative_frame(rotations, reference);
  const Quaternion mean = swa_mean(frame.quats, weights, reference);
  return frame.base * rotation_from_quat(mean);
}

}  // namespace tensorp
