#pragma once
// Self-checking suites behind `tensorp verify` and the acceptance runner.
// Each check prints one verdict line plus supporting numbers; random checks
// take a seed so reruns are reproducible.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tensorp/beam.hpp"
#include "tensorp/schemes.hpp"

namespace tensorp {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20260822ull;

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string block2x2(const Mat3& f) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%9.6f %9.6f; %9.6f %9.6f]", f(0, 0), f(0, 1), f(1, 0),
                f(1, 1));
  return buf;
}

inline double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline Quaternion random_unit_quaternion(std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  while (true) {
    Quaternion q;
    q.w = normal(gen);
    q.v = Vec3{normal(gen), normal(gen), normal(gen)};
    if (norm(q) > 1e-3) return canonical_hemisphere(normalized(q));
  }
}

inline Mat3 random_rotation(std::mt19937_64& gen) {
  return rotation_from_quat(random_unit_quaternion(gen));
}

// Stretch with a prescribed eigenframe; pipeline data sets pair this with
// clustered frames because the frame channel runs through the same spherical
// average as the rotation channel and shares its well-posedness domain. The
// spectrum is drawn descending so magnitude assignment keeps channel i on
// row i of the prescribed frame; otherwise the per-point sort permutes rows
// and scrambles clustered frames apart again.
inline Mat3 spd_with_frame(std::mt19937_64& gen, const Mat3& q, double log_range = 0.7) {
  std::array<double, 3> s;
  for (double& v : s) v = std::exp(uniform(gen, -log_range, log_range));
  std::sort(s.begin(), s.end(), std::greater<>());
  return transpose(q) * Mat3::diagonal({s[0], s[1], s[2]}) * q;
}

inline Mat3 random_spd(std::mt19937_64& gen, double log_range = 0.7) {
  return spd_with_frame(gen, random_rotation(gen), log_range);
}

// Rotation parts for pipeline data sets: one uniformly random attitude shared
// by the set, times per-point deviations of at most `spread` radians. Keeps
// the relative rotations inside the region where the spherical weighted
// average is well posed (and converges), which is the stated domain of the
// quaternion schemes; the base attitude itself remains fully general.
inline std::vector<Mat3> clustered_rotations(std::mt19937_64& gen, std::size_t n,
                                             double spread = 0.6) {
  const Mat3 base = random_rotation(gen);
  std::vector<Mat3> out(n, base);
  for (Mat3& r : out) {
    const Vec3 axis{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
    if (norm(axis) < 1e-9) continue;
    r = base * rotation_about(axis, uniform(gen, 0.0, spread));
  }
  return out;
}

// Four positions near the corners of a square, jittered so the bilinear
// moment matrix stays well conditioned across random draws.
inline std::vector<Vec3> jittered_corner_positions(std::mt19937_64& gen) {
  std::vector<Vec3> p;
  for (double cy : {-1.0, 1.0})
    for (double cx : {-1.0, 1.0})
      p.push_back(Vec3{cx + uniform(gen, -0.2, 0.2), cy + uniform(gen, -0.2, 0.2),
                       uniform(gen, -0.2, 0.2)});
  return p;
}

// Symmetric tensor with in-plane principal direction at the given angle.
inline Mat3 planar_symmetric(double angle, const Vec3& lambda) {
  const Vec3 n1{std::cos(angle), std::sin(angle), 0.0};
  const Vec3 n2{-std::sin(angle), std::cos(angle), 0.0};
  const Vec3 n3{0.0, 0.0, 1.0};
  return lambda[0] * outer(n1, n1) + lambda[1] * outer(n2, n2) + lambda[2] * outer(n3, n3);
}

// Two anisotropic tensors with primary axes at +45 degrees and just shy of
// -45 degrees, ten units apart.
inline std::vector<DataPoint> two_tensor_data() {
  return {{Vec3{-5.0, 0.0, 0.0}, planar_symmetric(0.25 * kPi, Vec3{10.0, 1.0, 1.0})},
          {Vec3{5.0, 0.0, 0.0}, planar_symmetric(0.99 * -0.25 * kPi, Vec3{20.0, 4.0, 1.0})}};
}

// Three identical tensors turned almost perpendicular to a fourth, one per
// corner of a square around the origin.
inline std::vector<DataPoint> four_tensor_data() {
  const Mat3 turned = planar_symmetric(0.99 * 0.5 * kPi, Vec3{7.5, 1.25, 1.0});
  const Mat3 straight = planar_symmetric(0.0, Vec3{10.0, 3.0, 1.0});
  return {{Vec3{5.0, 5.0, 0.0}, turned},
          {Vec3{-5.0, 5.0, 0.0}, turned},
          {Vec3{-5.0, -5.0, 0.0}, turned},
          {Vec3{5.0, -5.0, 0.0}, straight}};
}

inline const SchemeId kPipelineSchemes[] = {SchemeId::r_log,    SchemeId::r_mls,
                                            SchemeId::r_logmls, SchemeId::q_log,
                                            SchemeId::q_mls,    SchemeId::q_logmls};

}  // namespace detail

// Four corner tensors of a half-circle bend reproduce the center rotation;
// the exact schemes recover it exactly, the log-eigenvalue schemes with a
// slightly contracted primary stretch, the componentwise average collapses.
inline CheckResult check_single_element_bend() {
  CheckResult r;
  r.name = "single-element bend reproduction";
  const auto t0 = std::chrono::steady_clock::now();

  BeamConfig cfg;
  cfg.k0 = kPi / cfg.length;
  const Table2Result t = run_table2(cfg);

  std::ostringstream d;
  d << "analytic " << detail::block2x2(t.analytic) << '\n';
  r.pass = true;
  for (const Table2Entry& e : t.entries) {
    const double b00 = e.f(0, 0), b01 = e.f(0, 1), b10 = e.f(1, 0), b11 = e.f(1, 1);
    bool ok = false;
    std::string note;
    switch (e.scheme) {
      case SchemeId::r_mls:
      case SchemeId::q_mls: {
        const double dev = std::max(std::max(std::fabs(b00), std::fabs(b01 + 1.0)),
                                    std::max(std::fabs(b10 - 1.0), std::fabs(b11)));
        ok = dev <= 1e-9;
        note = "dev " + detail::num(dev);
        break;
      }
      case SchemeId::euclidean: {
        const double dev = std::max(std::max(std::fabs(b00), std::fabs(b01)),
                                    std::max(std::fabs(b10), std::fabs(b11)));
        ok = dev <= 1e-12;
        note = "dev " + detail::num(dev);
        break;
      }
      default: {
        const double shape = std::max(std::max(std::fabs(b00), std::fabs(b01 + 1.0)),
                                      std::fabs(b11));
        ok = shape <= 1e-9 && b10 >= 0.983 && b10 <= 0.993;
        note = "shape " + detail::num(shape) + ", stretch " + detail::num(b10);
        break;
      }
    }
    d << scheme_name(e.scheme) << '\t' << detail::block2x2(e.f) << "  " << note
      << (ok ? "" : "  <-- out of tolerance") << '\n';
    r.pass = r.pass && ok;
  }
  const double secs = detail::elapsed_seconds(t0);
  r.pass = r.pass && secs < 1.0;
  d << "elapsed " << detail::num(secs) << " s (limit 1)";
  r.detail = d.str();
  return r;
}

// Mesh-refinement slopes of the reconstructed tensor error: second order for
// the four-point bilinear sampling, third order for the rotation-fit schemes
// on the eight-point quadratic sampling.
inline CheckResult check_refinement_orders() {
  CheckResult r;
  r.name = "refinement convergence orders";
  const auto t0 = std::chrono::steady_clock::now();

  BeamConfig cfg;
  cfg.k1 = 0.15;
  cfg.eta1 = 0.15;
  cfg.xi1 = 0.15;

  std::ostringstream d;
  r.pass = true;
  for (SchemeId id : detail::kPipelineSchemes) {
    const auto slope = [&](int samples, BasisKind basis) {
      const ConvergenceRun run = run_convergence(cfg, id, samples, basis);
      std::vector<double> err;
      for (const ConvergenceErrors& e : run.errors) err.push_back(e.tensor);
      return fit_loglog_slope(run.spacings, err, 2);
    };
    const double s4 = slope(4, BasisKind::bilinear_2d);
    const double s8 = slope(8, BasisKind::quadratic_2d);
    const bool cubic = id == SchemeId::r_mls || id == SchemeId::r_logmls;
    const double target8 = cubic ? 3.0 : 2.0;
    const bool ok = std::fabs(s4 - 2.0) <= 0.15 && std::fabs(s8 - target8) <= 0.2;
    d << scheme_name(id) << "\t4-point slope " << detail::num(s4) << " (want 2), 8-point "
      << detail::num(s8) << " (want " << detail::num(target8) << ")"
      << (ok ? "" : "  <-- out of tolerance") << '\n';
    r.pass = r.pass && ok;
  }
  const double secs = detail::elapsed_seconds(t0);
  r.pass = r.pass && secs < 10.0;
  d << "elapsed " << detail::num(secs) << " s (limit 10)";
  r.detail = d.str();
  return r;
}

// Rotating every data tensor by a fixed rotation must rotate the result and
// nothing else. The decomposition-based schemes and the componentwise
// average achieve this; the Cholesky-based baselines must not.
inline CheckResult check_frame_indifference() {
  CheckResult r;
  r.name = "frame indifference under data rotation";
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<DataPoint> data = detail::four_tensor_data();
  const Mat3 m = rotation_about(Vec3{0.0, 0.0, 1.0}, kPi / 3.0) *
                 rotation_about(Vec3{0.0, 1.0, 0.0}, kPi / 6.0) *
                 rotation_about(Vec3{1.0, 0.0, 0.0}, kPi / 12.0);
  SchemeOptions opt;
  opt.basis = BasisKind::bilinear_2d;
  opt.symmetric_input = true;

  std::ostringstream d;
  r.pass = true;
  const Vec3 xp{};
  for (SchemeId id : detail::kPipelineSchemes) {
    const double dev = objectivity_deviation(id, data, xp, m, opt);
    const bool ok = dev <= 1e-6;
    d << scheme_name(id) << "\tdeviation " << detail::num(dev) << " (want <= 1e-6)"
      << (ok ? "" : "  <-- out of tolerance") << '\n';
    r.pass = r.pass && ok;
  }
  {
    const double dev = objectivity_deviation(SchemeId::euclidean, data, xp, m, opt);
    const bool ok = dev <= 1e-6;
    d << "e\tdeviation " << detail::num(dev) << " (want <= 1e-6)"
      << (ok ? "" : "  <-- out of tolerance") << '\n';
    r.pass = r.pass && ok;
  }
  for (SchemeId id : {SchemeId::log_euclidean, SchemeId::cholesky, SchemeId::log_cholesky}) {
    const double dev = objectivity_deviation(id, data, xp, m, opt);
    const bool ok = dev > 1e-3;
    d << scheme_name(id) << "\tdeviation " << detail::num(dev) << " (want > 1e-3)"
      << (ok ? "" : "  <-- not above threshold") << '\n';
    r.pass = r.pass && ok;
  }
  const double secs = detail::elapsed_seconds(t0);
  r.pass = r.pass && secs < 1.0;
  d << "elapsed " << detail::num(secs) << " s (limit 1)";
  r.detail = d.str();
  return r;
}

// Multiplying every data tensor by a positive scalar must scale the result
// by the same scalar, over eight orders of magnitude.
inline CheckResult check_scaling_invariance(std::uint64_t seed = kDefaultVerifySeed) {
  CheckResult r;
  r.name = "scaling invariance";
  std::mt19937_64 gen(seed);
  SchemeOptions opt;
  opt.basis = BasisKind::bilinear_2d;

  double worst = 0.0;
  std::string worst_at = "-";
  r.pass = true;
  for (int it = 0; it < 100; ++it) {
    const std::vector<Vec3> positions = detail::jittered_corner_positions(gen);
    const std::vector<Mat3> rotations = detail::clustered_rotations(gen, 4);
    const std::vector<Mat3> frames = detail::clustered_rotations(gen, 4);
    std::vector<DataPoint> general(4), spd(4);
    for (int j = 0; j < 4; ++j) {
      general[j] = {positions[j], rotations[j] * detail::spd_with_frame(gen, frames[j])};
      spd[j] = {positions[j], detail::random_spd(gen)};
    }
    const Vec3 xp{detail::uniform(gen, -0.3, 0.3), detail::uniform(gen, -0.3, 0.3),
                  detail::uniform(gen, -0.3, 0.3)};

    for (SchemeId id : kAllSchemes) {
      const std::vector<DataPoint>& data = is_pipeline_scheme(id) ? general : spd;
      const Mat3 base = evaluate_scheme(id, data, xp, opt);
      for (double alpha : {1e-3, 1e3}) {
        std::vector<DataPoint> scaled = data;
        for (DataPoint& p : scaled) p.tensor = alpha * p.tensor;
        const Mat3 res = evaluate_scheme(id, scaled, xp, opt);
        const double dev =
            frobenius_norm(res - alpha * base) / (alpha * frobenius_norm(base));
        if (dev > worst) {
          worst = dev;
          worst_at = scheme_name(id);
        }
        r.pass = r.pass && dev <= 1e-9;
      }
    }
  }
  r.detail = "worst relative deviation " + detail::num(worst) + " (" + worst_at +
             ", want <= 1e-9) over 100 datasets x 10 schemes x {1e-3, 1e3}";
  return r;
}

// The log-weighted eigenvalue average must stay between the channel minimum
// and maximum for any positive weights summing to one.
inline CheckResult check_log_mean_bounds(std::uint64_t seed = kDefaultVerifySeed) {
  CheckResult r;
  r.name = "log-average eigenvalue bounds";
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> count(1, 8);

  double worst = 0.0;
  r.pass = true;
  for (int it = 0; it < 10000; ++it) {
    const int n = count(gen);
    std::vector<Vec3> values(static_cast<std::size_t>(n));
    const bool boundary = it % 10 == 0;  // identical data: result must hit both bounds
    for (int j = 0; j < n; ++j) {
      if (boundary && j > 0) {
        values[static_cast<std::size_t>(j)] = values[0];
        continue;
      }
      for (int i = 0; i < 3; ++i)
        values[static_cast<std::size_t>(j)][i] = std::exp(detail::uniform(gen, -3.0, 3.0));
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& wj : w) sum += wj = detail::uniform(gen, 1e-3, 1.0);
    for (double& wj : w) wj /= sum;

    const Vec3 res = interpolate_eigen_log(values, w);
    for (int i = 0; i < 3; ++i) {
      double lo = values[0][i], hi = values[0][i];
      for (const Vec3& v : values) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      const double slack = 1e-13 * hi;
      worst = std::max(worst, std::max(lo - res[i], res[i] - hi) / hi);
      r.pass = r.pass && res[i] >= lo - slack && res[i] <= hi + slack;
    }
  }
  r.detail = "worst relative bound excess " + detail::num(worst) +
             " (want <= 1e-13) over 10000 datasets incl. identical-data boundaries";
  return r;
}

// The known pathological scalar set: a square fit dips negative between the
// two low samples, while the log-domain variants stay positive and the plain
// log average stays inside the data range.
inline CheckResult check_log_fit_positivity() {
  CheckResult r;
  r.name = "log-fit positivity and interpolation";

  const std::vector<Vec3> points{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {3.0, 0.0, 0.0}};
  const std::vector<Vec3> values{{0.1, 0.1, 0.1}, {0.1, 0.1, 0.1}, {1.0, 1.0, 1.0}};

  double mls_min = 1e300;
  double log_lo = 1e300, log_hi = -1e300;
  double logmls_min = 1e300;
  for (int i = 0; i <= 400; ++i) {
    const Vec3 xp{1.0 + 0.005 * i, 0.0, 0.0};
    const std::vector<double> w =
        normalized_weights(points, xp, default_weight_parameter(points, xp));
    const double mls =
        interpolate_eigen_mls(values, points, xp, w, BasisKind::quadratic_1d)[0];
    const double logv = interpolate_eigen_log(values, w)[0];
    const double logmls =
        interpolate_eigen_logmls(values, points, xp, w, BasisKind::quadratic_1d)[0];
    if (xp[0] <= 2.0) mls_min = std::min(mls_min, mls);
    log_lo = std::min(log_lo, logv);
    log_hi = std::max(log_hi, logv);
    logmls_min = std::min(logmls_min, logmls);
  }

  double interp_dev = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const std::vector<double> w =
        normalized_weights(points, points[j], default_weight_parameter(points, points[j]));
    const double at =
        interpolate_eigen_logmls(values, points, points[j], w, BasisKind::quadratic_1d)[0];
    interp_dev = std::max(interp_dev, std::fabs(at - values[j][0]));
  }

  r.pass = mls_min < 0.0 && log_lo >= 0.1 - 1e-12 && log_hi <= 1.0 + 1e-12 &&
           logmls_min > 0.0 && interp_dev <= 1e-9;
  r.detail = "square-fit min " + detail::num(mls_min) + " (want < 0), log range [" +
             detail::num(log_lo) + ", " + detail::num(log_hi) +
             "] (want within [0.1, 1]), log-fit min " + detail::num(logmls_min) +
             " (want > 0), log-fit data deviation " + detail::num(interp_dev) +
             " (want <= 1e-9)";
  return r;
}

// Three routes to the geodesic distance between unit quaternions agree:
// norm of the quaternion log, arccos of the 4D dot, and half the rotation
// angle recovered from the matrix route.
inline CheckResult check_geodesic_identities(std::uint64_t seed = kDefaultVerifySeed) {
  CheckResult r;
  r.name = "quaternion geodesic distance identities";
  std::mt19937_64 gen(seed);

  double worst = 0.0;
  int accepted = 0;
  int guard = 0;
  r.pass = true;
  while (accepted < 1000 && ++guard < 100000) {
    const Quaternion q1 = detail::random_unit_quaternion(gen);
    Quaternion q2 = detail::random_unit_quaternion(gen);
    if (dot(q1, q2) < 0.0) q2 = negate(q2);
    // Near-identical pairs are excluded: arccos amplifies rounding without
    // bound as the dot approaches one, which would test conditioning of the
    // comparison route rather than the identity.
    if (dot(q1, q2) > 0.99) continue;
    ++accepted;

    const double via_log = norm(quat_log(quat_product(conjugate(q1), q2)));
    const double via_dot = std::acos(clamp_unit(dot(q1, q2)));
    const double via_matrix =
        0.5 * norm(log_so3(relative_rotation(rotation_from_quat(q1), rotation_from_quat(q2))));
    const double dev = std::max(std::fabs(via_log - via_dot),
                                std::max(std::fabs(via_log - via_matrix),
                                         std::fabs(via_dot - via_matrix)));
    worst = std::max(worst, dev);
    r.pass = r.pass && dev <= 1e-12;
  }
  r.pass = r.pass && accepted == 1000;
  r.detail = "worst pairwise deviation " + detail::num(worst) +
             " (want <= 1e-12) over 1000 same-hemisphere pairs";
  return r;
}

// Every pipeline output factors into two exact rotations and positive
// stretches (for the log-domain eigenvalue schemes), and the returned tensor
// is the product of its own factors.
inline CheckResult check_structure_preservation(std::uint64_t seed = kDefaultVerifySeed) {
  CheckResult r;
  r.name = "structure preservation on random data";
  std::mt19937_64 gen(seed);
  SchemeOptions opt;
  opt.basis = BasisKind::bilinear_2d;

  double worst_orth = 0.0, worst_rebuild = 0.0;
  r.pass = true;
  for (int it = 0; it < 1000; ++it) {
    const std::vector<Vec3> positions = detail::jittered_corner_positions(gen);
    const std::vector<Mat3> rotations = detail::clustered_rotations(gen, 4);
    const std::vector<Mat3> frames = detail::clustered_rotations(gen, 4);
    std::vector<DataPoint> data(4);
    for (int j = 0; j < 4; ++j)
      data[j] = {positions[j], rotations[j] * detail::spd_with_frame(gen, frames[j])};
    const Vec3 xp{detail::uniform(gen, -0.3, 0.3), detail::uniform(gen, -0.3, 0.3),
                  detail::uniform(gen, -0.3, 0.3)};

    for (SchemeId id : detail::kPipelineSchemes) {
      const InterpolationResult res = interpolate_tensor(data, xp, pipeline_config(id, opt));
      for (const Mat3* rot : {&res.rotation, &res.frame}) {
        const double orth = std::max(max_abs(transpose(*rot) * *rot - Mat3::identity()),
                                     std::fabs(determinant(*rot) - 1.0));
        worst_orth = std::max(worst_orth, orth);
        r.pass = r.pass && orth <= 1e-8;
      }
      const SchemeConfig cfg = pipeline_config(id, opt);
      if (cfg.eigen != EigenScheme::poly_fit)
        for (int i = 0; i < 3; ++i) r.pass = r.pass && res.lambda[i] > 0.0;
      const Mat3 rebuild =
          res.rotation * (transpose(res.frame) * Mat3::diagonal(res.lambda) * res.frame);
      const double dev = frobenius_norm(rebuild - res.tensor) /
                         std::max(1.0, frobenius_norm(res.tensor));
      worst_rebuild = std::max(worst_rebuild, dev);
      r.pass = r.pass && dev <= 1e-12;
    }
  }
  r.detail = "worst orthonormality defect " + detail::num(worst_orth) +
             " (want <= 1e-8), worst reconstruction deviation " + detail::num(worst_rebuild) +
             " (want <= 1e-12) over 1000 datasets x 6 schemes";
  return r;
}

// Midway between two anisotropic tensors with primary axes 90 degrees apart
// the interpolated primary axis bisects them, and the determinant climbs
// monotonically for everything except the componentwise average.
inline CheckResult check_orientation_midpoint() {
  CheckResult r;
  r.name = "two-tensor orientation midpoint";
  const std::vector<DataPoint> data = detail::two_tensor_data();
  SchemeOptions opt;
  opt.basis = BasisKind::linear_1d;
  opt.symmetric_input = true;

  std::ostringstream d;
  r.pass = true;
  const double want = 1.0 / std::sqrt(2.0);
  for (SchemeId id : detail::kPipelineSchemes) {
    const Mat3 mid = evaluate_scheme(id, data, Vec3{}, opt);
    const double c = orientation_cosine(data[0].tensor, mid);
    const bool ok = std::fabs(c - want) <= 0.02;
    d << scheme_name(id) << "\tmidpoint cosine " << detail::num(c) << " (want "
      << detail::num(want) << " +- 0.02)" << (ok ? "" : "  <-- out of tolerance") << '\n';
    r.pass = r.pass && ok;
  }

  const SchemeId monotone_schemes[] = {SchemeId::r_log,         SchemeId::r_mls,
                                       SchemeId::r_logmls,      SchemeId::q_log,
                                       SchemeId::q_mls,         SchemeId::q_logmls,
                                       SchemeId::cholesky,      SchemeId::log_euclidean,
                                       SchemeId::log_cholesky};
  for (SchemeId id : monotone_schemes) {
    bool monotone = true;
    double prev = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const Vec3 xp{-5.0 + i, 0.0, 0.0};
      const double det = determinant(evaluate_scheme(id, data, xp, opt));
      if (i > 0 && det < prev - 1e-9 * std::fabs(prev)) monotone = false;
      prev = det;
    }
    if (!monotone) d << scheme_name(id) << "\tdeterminant not monotone along the line\n";
    r.pass = r.pass && monotone;
  }
  d << "determinant monotone for all schemes except the componentwise average";
  r.detail = d.str();
  return r;
}

// With two data points the spherical weighted average lies on the connecting
// geodesic: it must match the closed-form geodesic blend for every weight.
inline CheckResult check_swa_slerp_agreement(std::uint64_t seed = kDefaultVerifySeed) {
  CheckResult r;
  r.name = "weighted average matches geodesic blend";
  std::mt19937_64 gen(seed);

  double worst = 0.0;
  r.pass = true;
  for (int it = 0; it < 50; ++it) {
    const Mat3 r1 = detail::random_rotation(gen);
    Vec3 axis{detail::uniform(gen, -1.0, 1.0), detail::uniform(gen, -1.0, 1.0),
              detail::uniform(gen, -1.0, 1.0)};
    if (norm(axis) < 1e-3) axis = Vec3{1.0, 0.0, 0.0};
    const double angle = detail::uniform(gen, 0.1, 2.5);
    const Mat3 r2 = r1 * rotation_about(axis, angle);

    const std::vector<Mat3> rotations{r1, r2};
    const RelativeFrame frame = build_relative_frame(rotations, 0);
    const Quaternion q1 = quat_from_rotation(r1);
    Quaternion q2 = quat_from_rotation(r2);
    if (dot(q1, q2) < 0.0) q2 = negate(q2);

    for (int wi = 1; wi <= 9; ++wi) {
      const double w = 0.1 * wi;
      const std::vector<double> weights{1.0 - w, w};
      const Quaternion mean = swa_mean(frame.quats, weights, 0);
      const Mat3 via_swa = frame.base * rotation_from_quat(mean);
      const Mat3 via_slerp = rotation_from_quat(slerp(q1, q2, w));
      const double dev = frobenius_norm(via_swa - via_slerp);
      worst = std::max(worst, dev);
      r.pass = r.pass && dev <= 1e-9;
    }
  }
  r.detail = "worst Frobenius deviation " + detail::num(worst) +
             " (want <= 1e-9) over 50 pairs x 9 weights";
  return r;
}

namespace detail {

template <class F>
CheckResult guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CheckResult r;
    r.name = "(aborted check)";
    r.detail = std::string("aborted: ") + e.what();
    return r;
  }
}

}  // namespace detail

inline std::vector<CheckResult> verify_suite(std::string_view suite,
                                             std::uint64_t seed = kDefaultVerifySeed) {
  using detail::guarded;
  if (suite == "table2") return {guarded(check_single_element_bend)};
  if (suite == "convergence") return {guarded(check_refinement_orders)};
  if (suite == "invariance")
    return {guarded(check_frame_indifference),
            guarded([&] { return check_scaling_invariance(seed); }),
            guarded([&] { return check_geodesic_identities(seed); })};
  if (suite == "bounds")
    return {guarded([&] { return check_log_mean_bounds(seed); }),
            guarded(check_log_fit_positivity),
            guarded([&] { return check_structure_preservation(seed); }),
            guarded(check_orientation_midpoint),
            guarded([&] { return check_swa_slerp_agreement(seed); })};
  fail(errc::parse_error, "unknown verify suite '" + std::string(suite) +
                              "' (expected table2, convergence, invariance, or bounds)");
}

// All checks in the presentation order used by the acceptance runner.
inline std::vector<CheckResult> verify_all(std::uint64_t seed = kDefaultVerifySeed) {
  using detail::guarded;
  return {guarded(check_single_element_bend),
          guarded(check_refinement_orders),
          guarded(check_frame_indifference),
          guarded([&] { return check_scaling_invariance(seed); }),
          guarded([&] { return check_log_mean_bounds(seed); }),
          guarded(check_log_fit_positivity),
          guarded([&] { return check_geodesic_identities(seed); }),
          guarded([&] { return check_structure_preservation(seed); }),
          guarded(check_orientation_midpoint),
          guarded([&] { return check_swa_slerp_agreement(seed); })};
}

inline int print_check_results(std::ostream& out, std::span<const CheckResult> results) {
  int failures = 0;
  for (const CheckResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << '\n';
    std::istringstream lines(r.detail);
    for (std::string line; std::getline(lines, line);) out << "       " << line << '\n';
    if (!r.pass) ++failures;
  }
  out << (results.size() - static_cast<std::size_t>(failures)) << " of " << results.size()
      << " checks passed\n";
  return failures;
}

}  // namespace tensorp
