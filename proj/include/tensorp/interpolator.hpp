#pragma once
// The full interpolation pipeline: decompose every data tensor, align the
// eigenstructure against a shared reference point, interpolate the two
// rotation fields and the eigenvalues, and reassemble T = R (Q^T Lambda Q).
//
// The reference data point (nearest to the evaluation point unless frozen)
// anchors both relative-rotation frames and the eigenvector sign alignment.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tensorp/decomposition.hpp"
#include "tensorp/eigenvalue_field.hpp"
#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/parallel.hpp"
#include "tensorp/rotation_field.hpp"
#include "tensorp/so3.hpp"
#include "tensorp/symmetric_eigen.hpp"
#include "tensorp/wls.hpp"

namespace tensorp {

enum class RotationScheme { relative_mls, swa };

struct DataPoint {
  Vec3 position;
  Mat3 tensor;
};

struct SchemeConfig {
  RotationScheme rotation = RotationScheme::relative_mls;
  EigenScheme eigen = EigenScheme::log_poly_fit;
  BasisKind basis = BasisKind::linear_1d;
  double c = -1.0;  // negative: scale by the farthest-point distance
  EigenAssignment assignment = EigenAssignment::by_magnitude;
  AssignmentOptions assignment_options{};
  bool symmetric_input = false;  // inputs are symmetric; R_p is pinned to identity
  long frozen_reference = -1;    // >= 0 pins the reference data point for every evaluation
};

struct InterpolationResult {
  Mat3 tensor;
  Mat3 rotation;
  Mat3 frame;
  Vec3 lambda;
  std::size_t reference = 0;
  BasisKind basis_used = BasisKind::constant;
  int swa_iterations = 0;
  std::vector<double> weights;
  std::vector<std::string> warnings;
};

namespace detail {

// Symmetric inputs skip the polar step so that indefinite tensors remain
// usable with the plain least squares eigenvalue scheme.
inline TensorDecomposition decompose_symmetric(const Mat3& t) {
  const SymmetricEigen e = symmetric_eigen(t);
  TensorDecomposition d;
  d.rotation = Mat3::identity();
  d.frame = Mat3::from_rows(e.vectors[0], e.vectors[1], e.vectors[2]);
  d.lambda = Vec3{e.values[0], e.values[1], e.values[2]};
  return d;
}

inline Mat3 interpolate_rotation_set(const std::vector<Mat3>& rotations,
                                     std::span<const Vec3> points, const Vec3& xp,
                                     std::span<const double> weights, std::size_t reference,
                                     RotationScheme scheme, BasisKind basis, int* swa_iterations) {
  const RelativeFrame frame = build_relative_frame(rotations, reference);
  if (scheme == RotationScheme::swa) {
    int iters = 0;
    const Quaternion mean = swa_mean(frame.quats, weights, reference, &iters);
    if (swa_iterations) *swa_iterations += iters;
    return frame.base * rotation_from_quat(mean);
  }
  const WlsFit fit = wls_fit(points, xp, weights, frame.vectors, basis);
  return frame.base * exp_so3(wls_evaluate(fit));
}

}  // namespace detail

inline InterpolationResult interpolate_tensor(std::span<const DataPoint> data, const Vec3& xp,
                                              const SchemeConfig& config) {
  const std::size_t n = data.size();
  if (n == 0) fail(errc::empty_data_set, "interpolate_tensor: no data points");

  std::vector<Vec3> points(n);
  for (std::size_t j = 0; j < n; ++j) points[j] = data[j].position;

  InterpolationResult out;
  const double c = config.c < 0.0 ? default_weight_parameter(points, xp) : config.c;
  out.weights = normalized_weights(points, xp, c);
  out.reference = config.frozen_reference >= 0
                      ? static_cast<std::size_t>(config.frozen_reference)
                      : nearest_point_index(points, xp);
  if (out.reference >= n) fail(errc::out_of_domain, "interpolate_tensor: reference index");

  std::vector<TensorDecomposition> decomps(n);
  for (std::size_t j = 0; j < n; ++j)
    decomps[j] = config.symmetric_input ? detail::decompose_symmetric(data[j].tensor)
                                        : polar_decompose(data[j].tensor);
  decomps = assign_and_orient(std::move(decomps), out.reference, config.assignment,
                              config.assignment_options, &out.warnings);

  // One basis reduction decision for the whole evaluation, shared by the
  // rotation and eigenvalue fits.
  bool degraded = false;
  out.basis_used = effective_basis(config.basis, n, &degraded);
  if (degraded)
    out.warnings.push_back("basis reduced to fit " + std::to_string(n) + " data points");

  std::vector<Mat3> rotations(n), frames(n);
  std::vector<Vec3> lambdas(n);
  for (std::size_t j = 0; j < n; ++j) {
    rotations[j] = decomps[j].rotation;
    frames[j] = decomps[j].frame;
    lambdas[j] = decomps[j].lambda;
  }

  out.rotation = config.symmetric_input
                     ? Mat3::identity()
                     : detail::interpolate_rotation_set(rotations, points, xp, out.weights,
                                                        out.reference, config.rotation,
                                                        out.basis_used, &out.swa_iterations);
  out.frame = detail::interpolate_rotation_set(frames, points, xp, out.weights, out.reference,
                                               config.rotation, out.basis_used,
                                               &out.swa_iterations);

  switch (config.eigen) {
    case EigenScheme::log_mean:
      out.lambda = interpolate_eigen_log(lambdas, out.weights);
      break;
    case EigenScheme::poly_fit:
      out.lambda = interpolate_eigen_mls(lambdas, points, xp, out.weights, out.basis_used);
      break;
    case EigenScheme::log_poly_fit:
      out.lambda = interpolate_eigen_logmls(lambdas, points, xp, out.weights, out.basis_used);
      break;
  }

  const Mat3 stretch = transpose(out.frame) * Mat3::diagonal(out.lambda) * out.frame;
  out.tensor = config.symmetric_input ? stretch : out.rotation * stretch;
  return out;
}

struct FieldPoint {
  Vec3 position;
  bool ok = false;
  InterpolationResult result;
  std::string error;
};

// Evaluates the pipeline at every grid point. Failures are collected per
// point instead of aborting the sweep; ordering follows the grid.
inline std::vector<FieldPoint> interpolate_field(std::span<const DataPoint> data,
                                                 std::span<const Vec3> grid,
                                                 const SchemeConfig& config) {
  std::vector<FieldPoint> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    out[i].position = grid[i];
    try {
      out[i].result = interpolate_tensor(data, grid[i], config);
      out[i].ok = true;
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace tensorp
