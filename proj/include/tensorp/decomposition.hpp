#pragma once
// Polar + spectral decomposition T = R * Q^T diag(lambda) Q and the
// neighborhood-wide eigenpair assignment / sign disambiguation passes.
//
// Q stores eigenvectors of the stretch tensor as ROWS, ordered to match
// lambda. lambda is decreasing after polar_decompose; assign_and_orient may
// re-permute it per the chosen assignment strategy.

#include <cstddef>
#include <string>
#include <vector>

#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/so3.hpp"
#include "tensorp/symmetric_eigen.hpp"

namespace tensorp {

struct TensorDecomposition {
  Mat3 rotation;        // polar rotation R
  Mat3 frame;           // eigenvector tensor Q, rows are unit eigenvectors
  Vec3 lambda;          // singular values of T, i.e. eigenvalues of U

  Mat3 stretch() const {
    return transpose(frame) * Mat3::diagonal(lambda) * frame;
  }
  Mat3 tensor() const { return rotation * stretch(); }
};

enum class EigenAssignment { by_magnitude, by_material_direction };

// Reference directions for by_material_direction, expressed in the material
// configuration. Defaults fit a slender body aligned with the x axis.
struct AssignmentOptions {
  Vec3 primary_direction{1.0, 0.0, 0.0};
  Vec3 secondary_direction{0.0, 1.0, 0.0};
};

inline TensorDecomposition polar_decompose(const Mat3& t) {
  const double det = determinant(t);
  if (det < 0.0) fail(errc::negative_determinant, "polar_decompose: tensor determinant is negative");
  if (det <= 1e-12) fail(errc::not_invertible, "polar_decompose: tensor determinant below tolerance");

  // U^2 = T^T T is symmetric by construction; its eigen square root gives U.
  const SymmetricEigen eig = symmetric_eigen(transpose(t) * t);
  TensorDecomposition d;
  for (int i = 0; i < 3; ++i) {
    if (eig.values[i] <= 0.0)
      fail(errc::not_invertible, "polar_decompose: squared stretch has a non-positive eigenvalue");
    d.lambda[i] = std::sqrt(eig.values[i]);
    d.frame.set_row(i, eig.vectors[i]);
  }

  const Mat3 u_inv = transpose(d.frame) *
                     Mat3::diagonal({1.0 / d.lambda[0], 1.0 / d.lambda[1], 1.0 / d.lambda[2]}) *
                     d.frame;
  Mat3 r = t * u_inv;
  // One orthogonalization sweep removes the O(eps * cond) drift of T U^-1.
  r = 0.5 * (r * (3.0 * Mat3::identity() - transpose(r) * r));
  if (!is_rotation(r))
    fail(errc::not_invertible, "polar_decompose: rotation recovery failed, tensor is numerically singular");
  d.rotation = r;
  return d;
}

inline std::vector<Quaternion> orient_quaternions(std::vector<Quaternion> quats,
                                                  std::size_t reference_index) {
  if (quats.empty()) fail(errc::empty_data_set, "orient_quaternions: no quaternions given");
  const Quaternion ref = quats[reference_index];
  for (Quaternion& q : quats)
    if (dot(ref, q) < 0.0) q = negate(q);
  return quats;
}

namespace detail {

// Permutation for by_material_direction: the eigenpair whose material
// direction R^T n is most aligned with the primary direction becomes row 0,
// the remaining pair is split by the secondary direction.
inline void material_permutation(const TensorDecomposition& d, const AssignmentOptions& opts,
                                 int perm[3]) {
  const Vec3 d1 = normalized(opts.primary_direction);
  const Vec3 d2 = normalized(opts.secondary_direction);
  const Mat3 rt = transpose(d.rotation);
  Vec3 material[3];
  for (int i = 0; i < 3; ++i) material[i] = rt * d.frame.row(i);

  int first = 0;
  for (int i = 1; i < 3; ++i)
    if (std::fabs(dot(material[i], d1)) > std::fabs(dot(material[first], d1))) first = i;
  int rest[2], n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != first) rest[n++] = i;
  int second = rest[0], third = rest[1];
  if (std::fabs(dot(material[third], d2)) > std::fabs(dot(material[second], d2)))
    std::swap(second, third);
  perm[0] = first;
  perm[1] = second;
  perm[2] = third;
}

}  // namespace detail

// Neighborhood pass fixing the eigenpair indexing and eigenvector signs of
// every decomposition against the reference data point. Idempotent: signs are
// flipped only on strictly smaller geodesic distance, and the permutation is
// a pure function of each decomposition.
inline std::vector<TensorDecomposition> assign_and_orient(
    std::vector<TensorDecomposition> decomps, std::size_t reference_index,
    EigenAssignment strategy, const AssignmentOptions& opts = {},
    std::vector<std::string>* warnings = nullptr) {
  if (decomps.empty()) fail(errc::empty_data_set, "assign_and_orient: no decompositions given");

  if (strategy == EigenAssignment::by_material_direction) {
    for (TensorDecomposition& d : decomps) {
      int perm[3];
      detail::material_permutation(d, opts, perm);
      const TensorDecomposition before = d;
      for (int i = 0; i < 3; ++i) {
        d.lambda[i] = before.lambda[perm[i]];
        d.frame.set_row(i, before.frame.row(perm[i]));
      }
    }
  }

  const Mat3 ref = decomps[reference_index].frame;
  for (std::size_t j = 0; j < decomps.size(); ++j) {
    TensorDecomposition& d = decomps[j];
    for (int i = 0; i < 2; ++i) {
      const double angle = geodesic_distance_s2(ref.row(i), d.frame.row(i));
      if (warnings && std::fabs(angle - kPi / 2.0) < 1e-6)
        warnings->push_back("eigenvector " + std::to_string(i + 1) + " of data point " +
                            std::to_string(j) + " is ambiguous: nearly orthogonal to the reference");
      if (dot(ref.row(i), d.frame.row(i)) < 0.0) d.frame.set_row(i, -d.frame.row(i));
    }
    d.frame.set_row(2, cross(d.frame.row(0), d.frame.row(1)));
  }
  return decomps;
}

}  // namespace tensorp
