#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "tensorp/interpolator.hpp"
#include "tensorp/io.hpp"

using namespace tensorp;

TEST_CASE("twelve-field records carry a full tensor") {
  std::istringstream in(
      "# comment line\n"
      "\n"
      "0 0 0  1 2 3  4 5 6  7 8 9\n"
      "1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1\n");
  const std::vector<DataPoint> data = parse_tensor_field(in, "mem");
  REQUIRE(data.size() == 2);
  REQUIRE(data[0].tensor(0, 1) == 2.0);
  REQUIRE(data[0].tensor(2, 0) == 7.0);
  REQUIRE(data[1].position[0] == 1.0);
  REQUIRE(max_abs(data[1].tensor - Mat3::identity()) == 0.0);
}

TEST_CASE("six-field records embed a plane tensor with a unit normal axis") {
  std::istringstream in("2 3  5.5 4.5 4.5 5.5\n");
  const std::vector<DataPoint> data = parse_tensor_field(in, "mem");
  REQUIRE(data.size() == 1);
  REQUIRE(data[0].position[0] == 2.0);
  REQUIRE(data[0].position[1] == 3.0);
  REQUIRE(data[0].position[2] == 0.0);
  REQUIRE(data[0].tensor(0, 0) == 5.5);
  REQUIRE(data[0].tensor(0, 1) == 4.5);
  REQUIRE(data[0].tensor(1, 0) == 4.5);
  REQUIRE(data[0].tensor(2, 2) == 1.0);
  REQUIRE(data[0].tensor(0, 2) == 0.0);
}

TEST_CASE("write and parse round trip is bit exact") {
  std::vector<DataPoint> data(3);
  data[0] = {{0.1, -0.2, 0.3}, Mat3::diagonal({1.0 / 3.0, kPi, std::sqrt(2.0)})};
  data[1] = {{1e-17, 2e300, -3e-200}, Mat3::identity()};
  data[2].position = {1, 2, 3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) data[2].tensor(i, j) = std::exp(i + 0.37 * j);

  std::ostringstream out;
  write_tensor_field(out, data);
  std::istringstream in(out.str());
  const std::vector<DataPoint> back = parse_tensor_field(in, "mem");
  REQUIRE(back.size() == data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    REQUIRE(max_abs(back[k].position - data[k].position) == 0.0);
    REQUIRE(max_abs(back[k].tensor - data[k].tensor) == 0.0);
  }
}

TEST_CASE("malformed records report the file name and line number") {
  std::istringstream in("0 0 0 1 0 0 0 1 0 0 0 1\n0 0 oops 1 0 0 0 1 0 0 0 1\n");
  try {
    parse_tensor_field(in, "field.txt");
    FAIL("expected rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::parse_error);
    REQUIRE(std::string(e.what()).find("field.txt:2") != std::string::npos);
  }

  std::istringstream wrong_count("1 2 3 4 5\n");
  REQUIRE_THROWS_AS(parse_tensor_field(wrong_count, "mem"), Error);
}

TEST_CASE("missing files surface as io errors") {
  try {
    read_tensor_field("/nonexistent/tensors.txt");
    FAIL("expected rejection");
  } catch (const Error& e) {
    REQUIRE(e.code() == errc::io_error);
  }
}

TEST_CASE("grid specifications expand to evaluation points") {
  const std::vector<Vec3> single = parse_grid_spec("1.5,2,-3");
  REQUIRE(single.size() == 1);
  REQUIRE(single[0][2] == -3.0);

  const std::vector<Vec3> line = parse_grid_spec("0,0,0:1,0,0:3");
  REQUIRE(line.size() == 3);
  REQUIRE(line[1][0] == 0.5);
  REQUIRE(line[2][0] == 1.0);

  REQUIRE_THROWS_AS(parse_grid_spec("0,0,0:1,0,0:1"), Error);
  REQUIRE_THROWS_AS(parse_grid_spec("0,0"), Error);
  REQUIRE_THROWS_AS(parse_grid_spec("0,0,0:1,1,1:x"), Error);
}

TEST_CASE("glyph export writes metrics for good points and nan rows for failures") {
  FieldPoint good;
  good.position = {1, 2, 0};
  good.ok = true;
  good.result.lambda = {4, 2, 1};
  good.result.frame = Mat3::identity();
  good.result.rotation = Mat3::identity();
  good.result.tensor = Mat3::diagonal({4, 2, 1});

  FieldPoint bad;
  bad.position = {3, 4, 0};
  bad.error = "tensor determinant is negative, at (3, 4)";

  std::ostringstream out;
  write_glyph_csv(out, std::vector<FieldPoint>{good, bad});
  std::istringstream lines(out.str());
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  REQUIRE(header.find("lambda1") != std::string::npos);
  REQUIRE(row1.find("ok") != std::string::npos);
  REQUIRE(row1.find("nan") == std::string::npos);
  REQUIRE(row2.find("nan") != std::string::npos);
  // Error text is one field: its commas must have been replaced.
  REQUIRE(row2.find("negative; at (3; 4)") != std::string::npos);

  // det = 8, trace = 7 for the good row.
  REQUIRE(row1.find("8") != std::string::npos);
  REQUIRE(row1.find("7") != std::string::npos);
}
