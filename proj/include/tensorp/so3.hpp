#pragma once
// Rotation-group kernel: skew map, exponential/logarithm, quaternion algebra,
// relative rotations, geodesic distances.
//
// Conventions relied on by every downstream module:
//  * rotation vectors extracted from a tensor satisfy ||v|| <= pi;
//  * extracted quaternions lie in the canonical hemisphere (scalar part >= 0,
//    a zero scalar part resolved by making the first nonzero vector component
//    positive);
//  * compound rotations use right-multiplication, R2 = R1 * R21.

#include <cmath>
#include <numbers>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"

namespace tensorp {

// Below this angle the closed-form sin/cos quotients switch to series.
inline constexpr double kSmallAngle = 1e-7;
// Orthonormality/determinant slack accepted before an input is rejected.
inline constexpr double kRotationTol = 1e-8;

inline Mat3 skew(const Vec3& a) {
  Mat3 s;
  s(0, 1) = -a[2];
  s(0, 2) = a[1];
  s(1, 0) = a[2];
  s(1, 2) = -a[0];
  s(2, 0) = -a[1];
  s(2, 1) = a[0];
  return s;
}

inline bool is_rotation(const Mat3& r, double tol = kRotationTol) {
  const Mat3 gram = transpose(r) * r;
  return max_abs(gram - Mat3::identity()) <= tol &&
         std::fabs(determinant(r) - 1.0) <= tol;
}

inline void require_rotation(const Mat3& r, const char* who) {
  if (!is_rotation(r)) fail(errc::invalid_rotation, std::string(who) + ": input is not a rotation tensor");
}

// Rodrigues formula, written against S(v) so that no unit axis is needed:
// R = I + (sin t / t) S(v) + ((1 - cos t) / t^2) S(v)^2 with t = ||v||.
inline Mat3 exp_so3(const Vec3& v) {
  const double t = norm(v);
  double a, b;
  if (t < kSmallAngle) {
    a = 1.0 - t * t / 6.0;
    b = 0.5 - t * t / 24.0;
  } else {
    a = std::sin(t) / t;
    b = (1.0 - std::cos(t)) / (t * t);
  }
  const Mat3 s = skew(v);
  return Mat3::identity() + a * s + b * (s * s);
}

struct Quaternion {
  double w = 1.0;  // scalar part
  Vec3 v;          // vector part

  static Quaternion identity() { return {}; }
};

inline double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + dot(a.v, b.v);
}
inline double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }
inline Quaternion normalized(const Quaternion& q) {
  const double n = norm(q);
  return {q.w / n, q.v / n};
}
inline Quaternion conjugate(const Quaternion& q) { return {q.w, -q.v}; }
inline Quaternion negate(const Quaternion& q) { return {-q.w, -q.v}; }

inline Quaternion quat_product(const Quaternion& a, const Quaternion& b) {
  Quaternion r{a.w * b.w - dot(a.v, b.v), a.w * b.v + b.w * a.v + cross(a.v, b.v)};
  return normalized(r);
}

inline Quaternion quat_from_axis_angle(const Vec3& axis, double angle) {
  const double n = norm(axis);
  if (n == 0.0) return Quaternion::identity();
  return {std::cos(angle / 2.0), (std::sin(angle / 2.0) / n) * axis};
}

// Scalar part made nonnegative; an exactly zero scalar part is resolved by
// the sign of the first nonzero vector component.
inline Quaternion canonical_hemisphere(const Quaternion& q) {
  if (q.w > 0.0) return q;
  if (q.w < 0.0) return negate(q);
  for (int i = 0; i < 3; ++i) {
    if (q.v[i] > 0.0) return q;
    if (q.v[i] < 0.0) return negate(q);
  }
  return q;
}

// Spurrier extraction: the trace branch when it dominates the diagonal,
// otherwise the branch of the largest diagonal entry. Both are well
// conditioned for the angles they are selected on.
inline Quaternion quat_from_rotation(const Mat3& r) {
  require_rotation(r, "quat_from_rotation");
  const double tr = trace(r);
  Quaternion q;
  double dmax = r(0, 0);
  int i = 0;
  if (r(1, 1) > dmax) {
    dmax = r(1, 1);
    i = 1;
  }
  if (r(2, 2) > dmax) {
    dmax = r(2, 2);
    i = 2;
  }
  if (tr >= dmax) {
    q.w = 0.5 * std::sqrt(1.0 + tr);
    const double s = 1.0 / (4.0 * q.w);
    q.v = {(r(2, 1) - r(1, 2)) * s, (r(0, 2) - r(2, 0)) * s, (r(1, 0) - r(0, 1)) * s};
  } else {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double qi = std::sqrt(r(i, i) / 2.0 + (1.0 - tr) / 4.0);
    const double s = 1.0 / (4.0 * qi);
    q.w = (r(k, j) - r(j, k)) * s;
    q.v[i] = qi;
    q.v[j] = (r(j, i) + r(i, j)) * s;
    q.v[k] = (r(k, i) + r(i, k)) * s;
  }
  return canonical_hemisphere(normalized(q));
}

inline Mat3 rotation_from_quat(const Quaternion& q) {
  const Mat3 s = skew(q.v);
  return Mat3::identity() + 2.0 * q.w * s + 2.0 * (s * s);
}

// Inverse of exp_so3; result has norm within [0, pi]. The angle comes from
// atan2 of the extracted quaternion, which stays accurate through theta = pi
// where trace-based formulas degrade.
inline Vec3 log_so3(const Mat3& r) {
  const Quaternion q = quat_from_rotation(r);
  const double s = norm(q.v);
  if (s < 1e-12) return (2.0 / q.w) * q.v;
  return (2.0 * std::atan2(s, q.w) / s) * q.v;
}

// exp of a tangent vector at identity on S^3 (half-angle convention).
inline Quaternion quat_exp(const Vec3& u) {
  const double a = norm(u);
  const double sinc = a < kSmallAngle ? 1.0 - a * a / 6.0 : std::sin(a) / a;
  return {std::cos(a), sinc * u};
}

// Geodesic log on S^3; defined for every unit quaternion except the antipode
// of identity, where no unique geodesic exists.
inline Vec3 quat_log(const Quaternion& q) {
  const double s = norm(q.v);
  if (s < 1e-12) {
    if (q.w <= 0.0) fail(errc::antipodal_pair, "quat_log: antipode of identity has no unique logarithm");
    return (1.0 / q.w) * q.v;
  }
  return (std::atan2(s, q.w) / s) * q.v;
}

inline Mat3 relative_rotation(const Mat3& r1, const Mat3& r2) {
  return transpose(r1) * r2;
}

// Great-circle distance on S^3, equal to arccos(q1 . q2) but computed from
// the relative quaternion so that nearby pairs keep full precision.
inline double geodesic_distance_s3(const Quaternion& q1, const Quaternion& q2) {
  const Quaternion rel = quat_product(conjugate(q1), q2);
  return std::atan2(norm(rel.v), rel.w);
}

inline double geodesic_distance_s2(const Vec3& n1, const Vec3& n2) {
  return std::acos(clamp_unit(dot(normalized(n1), normalized(n2))));
}

inline Mat3 rotation_about(const Vec3& axis, double angle) {
  return exp_so3((angle / norm(axis)) * axis);
}

}  // namespace tensorp
