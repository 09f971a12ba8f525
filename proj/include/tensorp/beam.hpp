#pragma once
// Planar beam kinematics used as an analytic test field: the deformation
// gradient of a centerline bent by a curvature function, with optional shear
// and axial strain, embedded in 3D with a unit out-of-plane axis. On top of
// it sit the two benchmark harnesses (single-element reproduction and the
// mesh-refinement convergence study).
//
// Strain functions are affine in the arc length, k(s) = k0 + k1 s and
// likewise for shear/axial, so the centerline rotation angle integrates in
// closed form and quadrature error cannot leak into convergence slopes.

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tensorp/decomposition.hpp"
#include "tensorp/error.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/schemes.hpp"

namespace tensorp {

struct BeamConfig {
  double length = 1.0;
  double height = 0.1;
  double k0 = 0.0, k1 = 0.0;    // curvature k(s1) = k0 + k1 s1
  double eta0 = 0.0, eta1 = 0.0;  // shear
  double xi0 = 0.0, xi1 = 0.0;    // axial strain
};

inline double beam_rotation_angle(const BeamConfig& cfg, double s1) {
  return cfg.k0 * s1 + 0.5 * cfg.k1 * s1 * s1;
}

// F(s1, s2) = [(1 + eta - k s2) g1 + xi g2] (x) e1 + g2 (x) e2 + e3 (x) e3
// where g1, g2 are the initial in-plane axes rotated by the centerline angle.
inline Mat3 beam_deformation_gradient(double s1, double s2, const BeamConfig& cfg) {
  if (s1 < 0.0 || s1 > cfg.length || std::fabs(s2) > 0.5 * cfg.height)
    fail(errc::out_of_domain, "beam_deformation_gradient: point outside the beam");
  const double phi = beam_rotation_angle(cfg, s1);
  const Vec3 g1{std::cos(phi), std::sin(phi), 0.0};
  const Vec3 g2{-std::sin(phi), std::cos(phi), 0.0};
  const double k = cfg.k0 + cfg.k1 * s1;
  const double eta = cfg.eta0 + cfg.eta1 * s1;
  const double xi = cfg.xi0 + cfg.xi1 * s1;
  return outer((1.0 + eta - k * s2) * g1 + xi * g2, Vec3{1.0, 0.0, 0.0}) +
         outer(g2, Vec3{0.0, 1.0, 0.0}) + outer(Vec3{0.0, 0.0, 1.0}, Vec3{0.0, 0.0, 1.0});
}

namespace detail {

// Corner traversal starts at the clamped end so that the lowest-index
// nearest-point tie break lands on an anchor with zero centerline angle;
// anchoring the relative frame at the far end would push the largest
// relative rotation to the exact-pi branch of the logarithm.
inline std::vector<Vec3> beam_sample_positions(double s1_lo, double s1_hi, double s2_half,
                                               bool with_midpoints, double mid_fraction = 0.5) {
  const double sm = s1_lo + mid_fraction * (s1_hi - s1_lo);
  std::vector<Vec3> p{{s1_lo, -s2_half, 0.0},
                      {s1_hi, -s2_half, 0.0},
                      {s1_hi, s2_half, 0.0},
                      {s1_lo, s2_half, 0.0}};
  if (with_midpoints) {
    p.push_back({sm, -s2_half, 0.0});
    p.push_back({s1_hi, 0.0, 0.0});
    p.push_back({sm, s2_half, 0.0});
    p.push_back({s1_lo, 0.0, 0.0});
  }
  return p;
}

inline SchemeOptions beam_scheme_options(BasisKind basis) {
  SchemeOptions opt;
  opt.basis = basis;
  opt.assignment = EigenAssignment::by_material_direction;
  opt.assignment_options.primary_direction = Vec3{1.0, 0.0, 0.0};
  opt.assignment_options.secondary_direction = Vec3{0.0, 1.0, 0.0};
  return opt;
}

}  // namespace detail

struct Table2Entry {
  SchemeId scheme;
  Mat3 f;
};

struct Table2Result {
  Mat3 analytic;
  std::vector<Table2Entry> entries;
};

// Half-circle bend sampled at the four element corners, interpolated at the
// element center with the bilinear basis and material-direction assignment.
inline Table2Result run_table2(const BeamConfig& cfg) {
  const std::vector<Vec3> positions =
      detail::beam_sample_positions(0.0, cfg.length, 0.5 * cfg.height, false);
  std::vector<DataPoint> data(positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j)
    data[j] = {positions[j], beam_deformation_gradient(positions[j][0], positions[j][1], cfg)};

  const Vec3 center{0.5 * cfg.length, 0.0, 0.0};
  const SchemeOptions opt = detail::beam_scheme_options(BasisKind::bilinear_2d);

  Table2Result out;
  out.analytic = beam_deformation_gradient(center[0], center[1], cfg);
  for (SchemeId id : {SchemeId::r_mls, SchemeId::q_mls, SchemeId::r_log, SchemeId::q_log,
                      SchemeId::r_logmls, SchemeId::q_logmls, SchemeId::euclidean})
    out.entries.push_back({id, evaluate_scheme(id, data, center, opt)});
  return out;
}

struct ConvergenceErrors {
  double lambda = 0.0;
  double rotation = 0.0;
  double frame = 0.0;
  double stretch = 0.0;
  double tensor = 0.0;
};

struct ConvergenceRun {
  std::vector<double> spacings;
  std::vector<ConvergenceErrors> errors;  // one entry per refinement level
};

namespace detail {

// Analytic reference decomposition with the same material assignment as the
// interpolated result, so structure errors compare like with like.
inline TensorDecomposition beam_reference_decomposition(const Mat3& f,
                                                        const AssignmentOptions& opts) {
  std::vector<TensorDecomposition> d{polar_decompose(f)};
  d = assign_and_orient(std::move(d), 0, EigenAssignment::by_material_direction, opts);
  return d[0];
}

inline double frame_deviation(const Mat3& computed, const Mat3& reference) {
  // Rows of the reference flip to the computed hemisphere before comparing;
  // eigenvector rows are direction representatives, not signed vectors.
  Mat3 aligned = reference;
  for (int i = 0; i < 3; ++i)
    if (dot(computed.row(i), aligned.row(i)) < 0.0) aligned.set_row(i, -aligned.row(i));
  return frobenius_norm(computed - aligned);
}

}  // namespace detail

// Station fractions for the refinement patches. Each patch is asymmetric
// about the evaluation point so the least squares fits keep their generic
// leading error term (a point-symmetric stencil cancels the odd term and
// inflates the observed order of the quadratic basis by one). The averaging
// channels need the opposite: their bias is first order unless the weighted
// first moment of the station offsets vanishes, so the fractions solve the
// barycenter condition sum_j w_j (s1_j - s1_p) = 0 for the normalized
// exponential weights. The weights depend only on distance ratios, so one
// root per stencil covers every refinement level.
inline constexpr double kStencilLeftFraction4 = 0.6877769464906989;
inline constexpr double kStencilLeftFraction8 = 0.39728523076359645;
inline constexpr double kStencilMidFraction8 = 0.45;

// Refinement sweep: one rectangular patch of width h and height h/10 around
// the mid-beam evaluation point, halved per level. Errors are Frobenius /
// Euclidean norms against the analytic field there.
inline ConvergenceRun run_convergence(const BeamConfig& cfg, SchemeId scheme, int sample_count,
                                      BasisKind basis, int levels = 7) {
  if (sample_count != 4 && sample_count != 8)
    fail(errc::out_of_domain, "run_convergence: sample count must be 4 or 8");
  const SchemeOptions opt = detail::beam_scheme_options(basis);
  const Vec3 center{0.5 * cfg.length, 0.0, 0.0};
  const Mat3 f_exact = beam_deformation_gradient(center[0], center[1], cfg);
  const TensorDecomposition ref =
      detail::beam_reference_decomposition(f_exact, opt.assignment_options);

  ConvergenceRun run;
  for (int level = 1; level <= levels; ++level) {
    const double h = cfg.length * std::pow(2.0, -level);
    const double left = sample_count == 8 ? kStencilLeftFraction8 : kStencilLeftFraction4;
    const std::vector<Vec3> positions = detail::beam_sample_positions(
        center[0] - left * h, center[0] + (1.0 - left) * h, 0.05 * h, sample_count == 8,
        kStencilMidFraction8);
    std::vector<DataPoint> data(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j)
      data[j] = {positions[j], beam_deformation_gradient(positions[j][0], positions[j][1], cfg)};

    const InterpolationResult r =
        interpolate_tensor(data, center, pipeline_config(scheme, opt));

    ConvergenceErrors e;
    e.lambda = norm(r.lambda - ref.lambda);
    e.rotation = frobenius_norm(r.rotation - ref.rotation);
    e.frame = detail::frame_deviation(r.frame, ref.frame);
    const Mat3 stretch = transpose(r.frame) * Mat3::diagonal(r.lambda) * r.frame;
    e.stretch = frobenius_norm(stretch - ref.stretch());
    e.tensor = frobenius_norm(r.tensor - f_exact);
    run.spacings.push_back(h);
    run.errors.push_back(e);
  }
  return run;
}

// Least squares slope of ln(error) against ln(h) over levels [from, end).
inline double fit_loglog_slope(std::span<const double> h, std::span<const double> err,
                               std::size_t from) {
  const std::size_t n = h.size() - from;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = from; i < h.size(); ++i) {
    mx += std::log(h[i]);
    my += std::log(err[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = from; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace tensorp
