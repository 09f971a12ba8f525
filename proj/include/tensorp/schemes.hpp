#pragma once
// Uniform access to every interpolation scheme: the six pipeline variants
// (rotation scheme x eigenvalue scheme) plus the four symmetric baselines.
// Used by the command line tool and by the frame-indifference diagnostic.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tensorp/baselines.hpp"
#include "tensorp/interpolator.hpp"

namespace tensorp {

enum class SchemeId {
  r_log,
  r_mls,
  r_logmls,
  q_log,
  q_mls,
  q_logmls,
  euclidean,
  cholesky,
  log_euclidean,
  log_cholesky,
};

inline constexpr SchemeId kAllSchemes[] = {
    SchemeId::r_log,     SchemeId::r_mls,    SchemeId::r_logmls,      SchemeId::q_log,
    SchemeId::q_mls,     SchemeId::q_logmls, SchemeId::euclidean,     SchemeId::cholesky,
    SchemeId::log_euclidean, SchemeId::log_cholesky};

inline bool is_pipeline_scheme(SchemeId id) {
  switch (id) {
    case SchemeId::r_log:
    case SchemeId::r_mls:
    case SchemeId::r_logmls:
    case SchemeId::q_log:
    case SchemeId::q_mls:
    case SchemeId::q_logmls:
      return true;
    default:
      return false;
  }
}

inline const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::r_log: return "r-log";
    case SchemeId::r_mls: return "r-mls";
    case SchemeId::r_logmls: return "r-logmls";
    case SchemeId::q_log: return "q-log";
    case SchemeId::q_mls: return "q-mls";
    case SchemeId::q_logmls: return "q-logmls";
    case SchemeId::euclidean: return "e";
    case SchemeId::cholesky: return "c";
    case SchemeId::log_euclidean: return "log-e";
    case SchemeId::log_cholesky: return "log-c";
  }
  return "?";
}

inline std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes)
    if (name == scheme_name(id)) return id;
  return std::nullopt;
}

struct SchemeOptions {
  BasisKind basis = BasisKind::linear_1d;
  double c = -1.0;
  EigenAssignment assignment = EigenAssignment::by_magnitude;
  AssignmentOptions assignment_options{};
  bool symmetric_input = false;
  long frozen_reference = -1;
};

inline SchemeConfig pipeline_config(SchemeId id, const SchemeOptions& opt) {
  SchemeConfig config;
  switch (id) {
    case SchemeId::r_log:
    case SchemeId::r_mls:
    case SchemeId::r_logmls:
      config.rotation = RotationScheme::relative_mls;
      break;
    default:
      config.rotation = RotationScheme::swa;
      break;
  }
  switch (id) {
    case SchemeId::r_log:
    case SchemeId::q_log:
      config.eigen = EigenScheme::log_mean;
      break;
    case SchemeId::r_mls:
    case SchemeId::q_mls:
      config.eigen = EigenScheme::poly_fit;
      break;
    default:
      config.eigen = EigenScheme::log_poly_fit;
      break;
  }
  config.basis = opt.basis;
  config.c = opt.c;
  config.assignment = opt.assignment;
  config.assignment_options = opt.assignment_options;
  config.symmetric_input = opt.symmetric_input;
  config.frozen_reference = opt.frozen_reference;
  return config;
}

inline Mat3 evaluate_scheme(SchemeId id, std::span<const DataPoint> data, const Vec3& xp,
                            const SchemeOptions& opt = {}) {
  if (is_pipeline_scheme(id))
    return interpolate_tensor(data, xp, pipeline_config(id, opt)).tensor;

  std::vector<Vec3> points(data.size());
  std::vector<Mat3> tensors(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    points[j] = data[j].position;
    tensors[j] = data[j].tensor;
  }
  const double c = opt.c < 0.0 ? default_weight_parameter(points, xp) : opt.c;
  const std::vector<double> weights = normalized_weights(points, xp, c);
  switch (id) {
    case SchemeId::euclidean: return interp_euclidean(tensors, weights);
    case SchemeId::cholesky: return interp_cholesky(tensors, weights);
    case SchemeId::log_euclidean: return interp_log_euclidean(tensors, weights);
    default: return interp_log_cholesky(tensors, weights);
  }
}

// Frame-indifference deviation: rotate every data tensor by m (positions
// unchanged), interpolate, and compare the eigenvector directions against
// the rotated result of interpolating the original data. Zero for a scheme
// that commutes with rigid rotations of the data.
inline double objectivity_deviation(SchemeId id, std::span<const DataPoint> data, const Vec3& xp,
                                    const Mat3& m, const SchemeOptions& opt = {}) {
  require_rotation(m, "objectivity_deviation");
  std::vector<DataPoint> rotated(data.begin(), data.end());
  for (DataPoint& d : rotated) d.tensor = m * d.tensor * transpose(m);

  const Mat3 a = evaluate_scheme(id, rotated, xp, opt);
  const Mat3 b_raw = evaluate_scheme(id, data, xp, opt);
  const Mat3 b = m * b_raw * transpose(m);

  const SymmetricEigen ea = symmetric_eigen(0.5 * (a + transpose(a)));
  const SymmetricEigen eb = symmetric_eigen(0.5 * (b + transpose(b)));
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double angle = std::acos(clamp_unit(std::fabs(dot(ea.vectors[i], eb.vectors[i]))));
    sum += angle * angle;
  }
  return std::sqrt(sum);
}

}  // namespace tensorp
