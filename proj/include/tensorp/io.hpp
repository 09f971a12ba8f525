#pragma once
// Text formats: tensor field data files, the interpolated-glyph CSV export,
// and the little grid specification language of the command line tool.
//
// Data records are '#'-commented lines of 12 fields (x y z T11..T33) or
// 6 fields (x y T11 T12 T21 T22, embedded with a unit out-of-plane axis).
// Commas and whitespace both separate fields; parsing never consults the
// locale. Values print with 17 significant digits so a write/read roundtrip
// is lossless.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tensorp/baselines.hpp"
#include "tensorp/error.hpp"
#include "tensorp/interpolator.hpp"
#include "tensorp/linalg.hpp"

namespace tensorp {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline double parse_number(const std::string& token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(errc::parse_error, where + ": not a number: '" + token + "'");
  return value;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == '#') break;
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

}  // namespace detail

inline std::vector<DataPoint> parse_tensor_field(std::istream& in, const std::string& name) {
  std::vector<DataPoint> data;
  std::string line;
  for (long lineno = 1; std::getline(in, line); ++lineno) {
    const std::vector<std::string> f = detail::split_fields(line);
    if (f.empty()) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = detail::parse_number(f[i], where);

    DataPoint p;
    if (v.size() == 12) {
      p.position = Vec3{v[0], v[1], v[2]};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p.tensor(i, j) = v[3 + 3 * i + j];
    } else if (v.size() == 6) {
      p.position = Vec3{v[0], v[1], 0.0};
      p.tensor = Mat3::identity();
      p.tensor(0, 0) = v[2];
      p.tensor(0, 1) = v[3];
      p.tensor(1, 0) = v[4];
      p.tensor(1, 1) = v[5];
    } else {
      fail(errc::parse_error,
           where + ": expected 12 fields (3D) or 6 fields (planar), got " +
               std::to_string(v.size()));
    }
    data.push_back(p);
  }
  return data;
}

inline std::vector<DataPoint> read_tensor_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open '" + path + "'");
  return parse_tensor_field(in, path);
}

inline void write_tensor_field(std::ostream& out, std::span<const DataPoint> data) {
  out << "# x y z T11 T12 T13 T21 T22 T23 T31 T32 T33\n";
  for (const DataPoint& p : data) {
    out << format_double(p.position[0]) << ' ' << format_double(p.position[1]) << ' '
        << format_double(p.position[2]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out << ' ' << format_double(p.tensor(i, j));
    out << '\n';
  }
}

inline void write_tensor_field(const std::string& path, std::span<const DataPoint> data) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  write_tensor_field(out, data);
}

// Grid specification "x0,y0,z0:x1,y1,z1:count": `count` points evenly spaced
// from the first position to the second (inclusive). A bare "x,y,z" is a
// single point.
inline std::vector<Vec3> parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts{""};
  for (char ch : spec) {
    if (ch == ':')
      parts.emplace_back();
    else
      parts.back().push_back(ch);
  }
  const auto parse_point = [&](const std::string& s) {
    const std::vector<std::string> f = detail::split_fields(s);
    if (f.size() != 3) fail(errc::parse_error, "grid: expected x,y,z in '" + s + "'");
    return Vec3{detail::parse_number(f[0], "grid"), detail::parse_number(f[1], "grid"),
                detail::parse_number(f[2], "grid")};
  };
  if (parts.size() == 1) return {parse_point(parts[0])};
  if (parts.size() != 3) fail(errc::parse_error, "grid: expected start:end:count");
  const Vec3 a = parse_point(parts[0]);
  const Vec3 b = parse_point(parts[1]);
  const long count = static_cast<long>(detail::parse_number(parts[2], "grid"));
  if (count < 2) fail(errc::parse_error, "grid: count must be at least 2");
  std::vector<Vec3> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        a + (static_cast<double>(i) / static_cast<double>(count - 1)) * (b - a);
  return grid;
}

// One CSV row per evaluation point: position, eigenvalues, frame rows,
// rotation rows, stretch metrics, then "ok" or the error text. Metric
// columns are nan when the stretch is not positive definite (plain least
// squares eigenvalues can go negative) or the point failed outright.
inline void write_glyph_csv(std::ostream& out, std::span<const FieldPoint> field) {
  out << "# x,y,z,lambda1,lambda2,lambda3,"
         "q11,q12,q13,q21,q22,q23,q31,q32,q33,"
         "r11,r12,r13,r21,r22,r23,r31,r32,r33,"
         "det,trace,fa,ha,status\n";
  for (const FieldPoint& p : field) {
    out << format_double(p.position[0]) << ',' << format_double(p.position[1]) << ','
        << format_double(p.position[2]);
    if (!p.ok) {
      for (int i = 0; i < 25; ++i) out << ",nan";
      std::string msg = p.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      out << ',' << msg << '\n';
      continue;
    }
    const InterpolationResult& r = p.result;
    for (int i = 0; i < 3; ++i) out << ',' << format_double(r.lambda[i]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out << ',' << format_double(r.frame(i, j));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out << ',' << format_double(r.rotation(i, j));
    const Mat3 stretch = transpose(r.frame) * Mat3::diagonal(r.lambda) * r.frame;
    bool spd = true;
    for (int i = 0; i < 3; ++i) spd = spd && r.lambda[i] > 0.0;
    if (spd) {
      const Metrics m = compute_metrics(stretch);
      out << ',' << format_double(m.determinant) << ',' << format_double(m.trace) << ','
          << format_double(m.fa) << ',' << format_double(m.ha);
    } else {
      out << ",nan,nan,nan,nan";
    }
    out << ",ok\n";
  }
}

}  // namespace tensorp
