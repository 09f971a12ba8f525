// Command line front end: interpolate tensor fields, decompose samples, or
// run the built-in verification battery.
//
// Exit status: 0 on success, 2 when individual points failed but the run
// completed, 1 on fatal errors or failing verification checks.

#include <CLI11.hpp>
#include <tensorp/tensorp.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace tensorp;

BasisKind parse_basis(const std::string& name) {
  if (name == "constant") return BasisKind::constant;
  if (name == "linear-1d") return BasisKind::linear_1d;
  if (name == "quadratic-1d") return BasisKind::quadratic_1d;
  if (name == "bilinear-2d") return BasisKind::bilinear_2d;
  if (name == "quadratic-2d") return BasisKind::quadratic_2d;
  if (name == "quadratic-3d") return BasisKind::quadratic_3d;
  fail(errc::parse_error, "unknown basis '" + name +
                              "' (expected constant, linear-1d, quadratic-1d, "
                              "bilinear-2d, quadratic-2d, or quadratic-3d)");
}

// "magnitude" orders eigenvalues by size; "material:x,y,z" tracks the body
// axis closest to the given direction (a second :x,y,z sets the tiebreaker).
void parse_assignment(const std::string& text, SchemeOptions& opt) {
  if (text == "magnitude") {
    opt.assignment = EigenAssignment::by_magnitude;
    return;
  }
  if (text.rfind("material", 0) == 0) {
    opt.assignment = EigenAssignment::by_material_direction;
    if (text.size() == 8) return;
    if (text[8] != ':')
      fail(errc::parse_error, "assignment: expected material:x,y,z");
    const std::string rest = text.substr(9);
    const auto colon = rest.find(':');
    opt.assignment_options.primary_direction = parse_grid_spec(rest.substr(0, colon)).front();
    if (colon != std::string::npos)
      opt.assignment_options.secondary_direction = parse_grid_spec(rest.substr(colon + 1)).front();
    return;
  }
  fail(errc::parse_error, "unknown assignment '" + text +
                              "' (expected magnitude or material:x,y,z)");
}

// Baseline schemes return a symmetric tensor with no rotation part; report
// its spectral factorization so the glyph output has the same shape.
std::vector<FieldPoint> evaluate_baseline_field(SchemeId id, std::span<const DataPoint> data,
                                                std::span<const Vec3> grid,
                                                const SchemeOptions& opt) {
  std::vector<FieldPoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    FieldPoint& p = out[i];
    p.position = grid[i];
    try {
      const Mat3 t = evaluate_scheme(id, data, grid[i], opt);
      const SymmetricEigen eig = symmetric_eigen(t);
      p.result.tensor = t;
      p.result.rotation = Mat3::identity();
      p.result.frame = Mat3::from_rows(eig.vectors[0], eig.vectors[1], eig.vectors[2]);
      p.result.lambda = Vec3{eig.values[0], eig.values[1], eig.values[2]};
      p.ok = true;
    } catch (const Error& e) {
      p.error = e.what();
    }
  }
  return out;
}

void write_field_output(const std::string& path, std::span<const FieldPoint> field) {
  if (path.empty()) {
    write_glyph_csv(std::cout, field);
    return;
  }
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  write_glyph_csv(out, field);
}

int report_field(const std::string& output, std::span<const FieldPoint> field) {
  int failed = 0;
  for (const FieldPoint& p : field) {
    for (const std::string& w : p.result.warnings) std::cerr << "warning: " << w << '\n';
    if (!p.ok) {
      ++failed;
      std::cerr << "error at (" << p.position[0] << ", " << p.position[1] << ", "
                << p.position[2] << "): " << p.error << '\n';
    }
  }
  write_field_output(output, field);
  return failed == 0 ? 0 : 2;
}

int run_interpolate(const std::string& input, const std::vector<std::string>& at,
                    const std::string& grid, const std::string& scheme,
                    const std::string& basis, double c, const std::string& assign,
                    bool symmetric, long reference, const std::string& output) {
  const auto id = parse_scheme(scheme);
  if (!id) fail(errc::parse_error, "unknown scheme '" + scheme + "'");

  SchemeOptions opt;
  opt.basis = parse_basis(basis);
  opt.c = c;
  opt.symmetric_input = symmetric;
  opt.frozen_reference = reference;
  parse_assignment(assign, opt);

  std::vector<Vec3> points;
  for (const std::string& spec : at)
    for (const Vec3& p : parse_grid_spec(spec)) points.push_back(p);
  if (!grid.empty())
    for (const Vec3& p : parse_grid_spec(grid)) points.push_back(p);
  if (points.empty()) fail(errc::parse_error, "no evaluation points: pass --at or --grid");

  const std::vector<DataPoint> data = read_tensor_field(input);
  const std::vector<FieldPoint> field =
      is_pipeline_scheme(*id) ? interpolate_field(data, points, pipeline_config(*id, opt))
                              : evaluate_baseline_field(*id, data, points, opt);
  return report_field(output, field);
}

int run_decompose(const std::string& input, const std::string& assign,
                  const std::string& output) {
  SchemeOptions opt;
  parse_assignment(assign, opt);

  const std::vector<DataPoint> data = read_tensor_field(input);
  std::vector<FieldPoint> field(data.size());
  std::vector<TensorDecomposition> good;
  std::vector<std::size_t> good_index;
  for (std::size_t i = 0; i < data.size(); ++i) {
    field[i].position = data[i].position;
    try {
      good.push_back(polar_decompose(data[i].tensor));
      good_index.push_back(i);
    } catch (const Error& e) {
      field[i].error = e.what();
    }
  }

  // Orient the successfully decomposed tensors as one set so neighboring
  // frames stay comparable in the output.
  if (!good.empty()) {
    std::vector<std::string> warnings;
    good = assign_and_orient(std::move(good), 0, opt.assignment, opt.assignment_options,
                             &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    for (std::size_t k = 0; k < good.size(); ++k) {
      FieldPoint& p = field[good_index[k]];
      p.result.tensor = data[good_index[k]].tensor;
      p.result.rotation = good[k].rotation;
      p.result.frame = good[k].frame;
      p.result.lambda = good[k].lambda;
      p.ok = true;
    }
  }
  return report_field(output, field);
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  const std::vector<CheckResult> results =
      suite.empty() ? verify_all(seed) : verify_suite(suite, seed);
  return print_check_results(std::cout, results) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving interpolation of invertible 3x3 tensor fields"};
  app.require_subcommand(1);

  auto* interp = app.add_subcommand("interpolate", "evaluate an interpolated field");
  std::string input;
  std::vector<std::string> at;
  std::string grid;
  std::string scheme = "r-logmls";
  std::string basis = "linear-1d";
  double c = -1.0;
  std::string assign = "magnitude";
  bool symmetric = false;
  long reference = -1;
  std::string output;
  interp->add_option("input", input, "tensor field sample file")->required();
  interp->add_option("--at", at, "evaluation point x,y,z (repeatable)");
  interp->add_option("--grid", grid, "evaluation line x0,y0,z0:x1,y1,z1:count");
  interp->add_option("--scheme", scheme,
                     "r-log, r-mls, r-logmls, q-log, q-mls, q-logmls, e, c, log-e, log-c");
  interp->add_option("--basis", basis, "moving least squares basis (default linear-1d)");
  interp->add_option("--c-param", c, "weight decay parameter (negative: automatic)");
  interp->add_option("--assign", assign, "eigenvalue assignment: magnitude or material:x,y,z");
  interp->add_flag("--symmetric", symmetric, "treat inputs as symmetric (no rotation part)");
  interp->add_option("--reference", reference,
                     "freeze the reference sample index (negative: nearest)");
  interp->add_option("--output", output, "write glyph CSV here instead of stdout");

  auto* decomp = app.add_subcommand("decompose", "factor each sample into rotation and stretch");
  std::string dec_input;
  std::string dec_assign = "magnitude";
  std::string dec_output;
  decomp->add_option("input", dec_input, "tensor field sample file")->required();
  decomp->add_option("--assign", dec_assign,
                     "eigenvalue assignment: magnitude or material:x,y,z");
  decomp->add_option("--output", dec_output, "write glyph CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run the built-in verification checks");
  std::string suite;
  std::uint64_t seed = kDefaultVerifySeed;
  verify->add_option("--suite", suite, "table2, convergence, invariance, or bounds (default all)");
  verify->add_option("--seed", seed, "seed for the randomized checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (interp->parsed())
      return run_interpolate(input, at, grid, scheme, basis, c, assign, symmetric, reference,
                             output);
    if (decomp->parsed()) return run_decompose(dec_input, dec_assign, dec_output);
    return run_verify(suite, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
