#pragma once
// Eigen-decomposition of symmetric 3x3 tensors.
//
// Primary path is the closed-form trigonometric solution of the
// characteristic polynomial, sharpened by one Newton step per eigenvalue,
// with eigenvectors from cross products of shifted rows. A cyclic Jacobi
// sweep backs it up when the residual check fails, so callers always get
// eigenpairs at working precision.

#include <cmath>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"

namespace tensorp {

// values sorted decreasing; vectors[i] is the unit eigenvector of values[i];
// the frame is right-handed: vectors[2] = vectors[0] x vectors[1].
struct SymmetricEigen {
  double values[3]{};
  Vec3 vectors[3];
};

// Two eigenvalues closer than this (relative to the largest magnitude) are
// treated as a degenerate pair and their plane is completed deterministically.
inline constexpr double kEigenDegeneracyTol = 1e-9;

namespace detail {

inline double char_poly(const Mat3& a, double x) {
  Mat3 s = a;
  s(0, 0) -= x;
  s(1, 1) -= x;
  s(2, 2) -= x;
  return determinant(s);
}

// d/dx det(A - xI) = -(sum of principal 2x2 minors of A - xI).
inline double char_poly_derivative(const Mat3& a, double x) {
  const double d0 = a(0, 0) - x, d1 = a(1, 1) - x, d2 = a(2, 2) - x;
  const double m0 = d1 * d2 - a(1, 2) * a(2, 1);
  const double m1 = d0 * d2 - a(0, 2) * a(2, 0);
  const double m2 = d0 * d1 - a(0, 1) * a(1, 0);
  return -(m0 + m1 + m2);
}

// Unit null-space direction of A - lambda*I via the largest cross product of
// its rows; returns false when every cross is tiny (degenerate eigenvalue).
inline bool shifted_null_direction(const Mat3& a, double lambda, double scale, Vec3* out) {
  Mat3 s = a;
  s(0, 0) -= lambda;
  s(1, 1) -= lambda;
  s(2, 2) -= lambda;
  const Vec3 c01 = cross(s.row(0), s.row(1));
  const Vec3 c02 = cross(s.row(0), s.row(2));
  const Vec3 c12 = cross(s.row(1), s.row(2));
  Vec3 best = c01;
  double bn = squared_norm(c01);
  if (squared_norm(c02) > bn) {
    best = c02;
    bn = squared_norm(c02);
  }
  if (squared_norm(c12) > bn) {
    best = c12;
    bn = squared_norm(c12);
  }
  if (std::sqrt(bn) <= 1e-13 * scale * scale) return false;
  *out = normalized(best);
  return true;
}

// Unit vector orthogonal to n, built from the coordinate axis least aligned
// with n so the choice is deterministic under degeneracy. The cross form
// keeps the completion inside a coordinate plane containing n whenever n
// lies in one, which keeps planar input data planar.
inline Vec3 orthogonal_direction(const Vec3& n) {
  int k = 0;
  if (std::fabs(n[1]) < std::fabs(n[k])) k = 1;
  if (std::fabs(n[2]) < std::fabs(n[k])) k = 2;
  Vec3 axis;
  axis[k] = 1.0;
  return normalized(cross(axis, n));
}

inline void sort_eigen(SymmetricEigen* e) {
  for (int i = 0; i < 2; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (e->values[j] > e->values[i]) {
        std::swap(e->values[i], e->values[j]);
        std::swap(e->vectors[i], e->vectors[j]);
      }
}

// Classic cyclic Jacobi; unconditionally convergent, used only as fallback.
inline SymmetricEigen jacobi_eigen(const Mat3& input) {
  Mat3 a = input;
  Mat3 v = Mat3::identity();
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = std::fabs(a(0, 1)) + std::fabs(a(0, 2)) + std::fabs(a(1, 2));
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 j = Mat3::identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = transpose(j) * a * j;
        v = v * j;
      }
  }
  SymmetricEigen e;
  for (int i = 0; i < 3; ++i) {
    e.values[i] = a(i, i);
    e.vectors[i] = v.col(i);
  }
  sort_eigen(&e);
  e.vectors[2] = cross(e.vectors[0], e.vectors[1]);
  return e;
}

}  // namespace detail

inline SymmetricEigen symmetric_eigen(const Mat3& input) {
  const double scale = std::max(1.0, max_abs(input));
  if (max_abs(input - transpose(input)) > 1e-10 * scale)
    fail(errc::not_symmetric, "symmetric_eigen: input is not symmetric");
  // Work on the exactly symmetric average so both triangles agree.
  const Mat3 a = 0.5 * (input + transpose(input));

  SymmetricEigen e;
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  if (p1 == 0.0) {
    for (int i = 0; i < 3; ++i) {
      e.values[i] = a(i, i);
      e.vectors[i][i] = 1.0;
    }
    detail::sort_eigen(&e);
    e.vectors[2] = cross(e.vectors[0], e.vectors[1]);
    return e;
  }

  const double q = trace(a) / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 b = (1.0 / p) * (a - q * Mat3::identity());
  const double r = clamp_unit(determinant(b) / 2.0);
  const double phi = std::acos(r) / 3.0;
  e.values[0] = q + 2.0 * p * std::cos(phi);
  e.values[2] = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  e.values[1] = 3.0 * q - e.values[0] - e.values[2];

  for (double& lambda : e.values) {
    const double fp = detail::char_poly_derivative(a, lambda);
    if (std::fabs(fp) > 1e-12 * scale * scale) {
      const double step = detail::char_poly(a, lambda) / fp;
      if (std::fabs(step) <= 1e-3 * scale) lambda -= step;
    }
  }
  detail::sort_eigen(&e);

  const double gap_tol = kEigenDegeneracyTol * std::max(std::fabs(e.values[0]), std::fabs(e.values[2]));
  const bool top_pair = (e.values[0] - e.values[1]) <= gap_tol;
  const bool bottom_pair = (e.values[1] - e.values[2]) <= gap_tol;

  bool ok = true;
  if (top_pair && bottom_pair) {
    for (int i = 0; i < 3; ++i) {
      e.vectors[i] = Vec3{};
      e.vectors[i][i] = 1.0;
    }
  } else if (top_pair) {
    ok = detail::shifted_null_direction(a, e.values[2], scale, &e.vectors[2]);
    if (ok) {
      e.vectors[0] = detail::orthogonal_direction(e.vectors[2]);
      e.vectors[1] = cross(e.vectors[2], e.vectors[0]);
    }
  } else if (bottom_pair) {
    ok = detail::shifted_null_direction(a, e.values[0], scale, &e.vectors[0]);
    if (ok) e.vectors[1] = detail::orthogonal_direction(e.vectors[0]);
  } else {
    ok = detail::shifted_null_direction(a, e.values[0], scale, &e.vectors[0]) &&
         detail::shifted_null_direction(a, e.values[1], scale, &e.vectors[1]);
    if (ok) {
      e.vectors[1] -= dot(e.vectors[1], e.vectors[0]) * e.vectors[0];
      e.vectors[1] = normalized(e.vectors[1]);
    }
  }
  if (ok) {
    e.vectors[2] = cross(e.vectors[0], e.vectors[1]);
    double resid = 0.0;
    for (int i = 0; i < 3; ++i)
      resid = std::max(resid, norm(a * e.vectors[i] - e.values[i] * e.vectors[i]));
    if (resid <= 5e-11 * scale) return e;
  }
  return detail::jacobi_eigen(a);
}

}  // namespace tensorp
