#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/io.hpp"
#include "loewner/standard_fields.hpp"
#include "oracles.hpp"

using namespace loewner;
using namespace loewner::io;
using Complex = std::complex<double>;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "loewner_test_io";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_text(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("number formatting round trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, std::exp(1.0)}) {
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isnan(parse_double("nan")));
  CHECK(parse_double("-inf") == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(parse_double("1.0x"), ConfigError);
  CHECK_THROWS_AS(parse_double(""), ConfigError);
}

TEST_CASE("trajectory CSV round trip") {
  std::vector<TrajectoryRow> rows{
      {0.0, Complex(0.5, 0.0), Complex(0.5, 0.0), TrajectoryStatus::Completed},
      {0.25, Complex(0.1, 0.2), Complex(1.0 / 3.0, -0.7), TrajectoryStatus::ExitedDomain},
      {1.0, Complex(0.1, 0.2), Complex(std::nan(""), 0.0), TrajectoryStatus::SingularityHit},
  };
  std::ostringstream out;
  write_trajectory_csv(out, rows);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kTrajectoryHeader) + "\n", 0) == 0);

  std::istringstream in(text);
  const auto back = read_trajectory_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].t == rows[k].t);
    CHECK(back[k].z0 == rows[k].z0);
    CHECK(back[k].status == rows[k].status);
  }
  CHECK(back[1].w == rows[1].w);
  CHECK(std::isnan(back[2].w.real()));

  std::ostringstream again;
  write_trajectory_csv(again, back);
  CHECK(again.str() == text);

  std::istringstream bad("t,z\n");
  CHECK_THROWS_AS(read_trajectory_csv(bad), ConfigError);
  CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
}

TEST_CASE("hull CSV and SVG") {
  const HullTrace tr = trace_hull(DrivingFunction::constant(0.0, 1.0), {0.0, 0.5, 1.0});
  std::ostringstream out;
  write_hull_csv(out, tr);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kHullHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(split_csv_line(line).size() == 6);
    ++rows;
  }
  CHECK(rows == 3);
  const std::string svg = hull_svg(tr);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("tabulated driver files") {
  const DrivingFunction d = read_tabulated_driver(write_text("ok.csv", "t,re,im\n0,0,0\n0.5,1,0\n1,1,2\n"));
  CHECK(d.horizon() == 1.0);
  CHECK(std::abs(d(0.25) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(d(0.75) - Complex(1.0, 1.0)) < 1e-15);
  const DrivingFunction two = read_tabulated_driver(write_text("two.csv", "0,1\n2,3\n"));
  CHECK(two.horizon() == 2.0);

  CHECK_THROWS_AS(read_tabulated_driver(write_text("mono.csv", "0,0\n0.5,1\n0.5,2\n")), ConfigError);
  CHECK_THROWS_AS(read_tabulated_driver(write_text("start.csv", "0.1,0\n0.5,1\n")), ConfigError);
  CHECK_THROWS_AS(read_tabulated_driver(write_text("cols.csv", "0,0,0,0\n1,1,1,1\n")), ConfigError);
  CHECK_THROWS_AS(read_tabulated_driver(scratch_dir() / "missing.csv"), ConfigError);
}

TEST_CASE("config parsing") {
  const auto base = scratch_dir();
  CHECK(parse_complex(json(1.5), "x") == Complex(1.5, 0.0));
  CHECK(parse_complex(json::parse("[1, -2]"), "x") == Complex(1.0, -2.0));
  CHECK_THROWS_AS(parse_complex(json("a"), "x"), ConfigError);

  CHECK(parse_times(json::parse("{\"start\": 0, \"end\": 1, \"count\": 5}"), "times") ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_times(json::parse("[]"), "times").empty());
  CHECK_THROWS_AS(parse_times(json::parse("[0, 1, 1]"), "times"), ConfigError);

  const HerglotzField aut = parse_field(json::parse("{\"kind\": \"autonomous\"}"), base);
  CHECK(std::abs(eval_field(aut, DiskPoint(0.3, 0.1), 0.0) - Complex(-0.3, -0.1)) < 1e-15);

  const HerglotzField rad = parse_field(json::parse("{\"kind\": \"radial\", \"driver\": 1}"), base);
  const HerglotzField ref = radial_constant(1.0);
  CHECK(std::abs(eval_field(rad, DiskPoint(0.2, 0.3), 0.5) - eval_field(ref, DiskPoint(0.2, 0.3), 0.5)) < 1e-15);

  const HerglotzField ch = parse_field(json::parse(R"({"kind": "chordal", "driver": {"segments": [
      {"kind": "constant", "t_start": 0, "t_end": 0.5, "value": 0},
      {"kind": "linear", "t_start": 0.5, "t_end": 1, "value": 0, "slope": 2}]}})"),
                                       base);
  CHECK(ch.horizon() == 1.0);

  try {
    parse_field(json::parse("{\"tau\": 0}"), base);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("missing key 'field.kind'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_field(json::parse("{\"kind\": \"spiral\"}"), base), ConfigError);
  CHECK_THROWS_AS(parse_solver(json::parse("{\"rel_tol\": -1}")), ConfigError);
  CHECK(parse_solver(json::parse("{\"rel_tol\": 1e-6}")).rel_tol == 1e-6);

  const json cfg = load_config(write_text("c.json", "{\n  // comment\n  \"a\": 1\n}\n"));
  CHECK(cfg.at("a") == 1);
  CHECK_THROWS_AS(load_config(write_text("broken.json", "{\"a\": ")), ConfigError);
  CHECK_THROWS_AS(load_config(write_text("array.json", "[1]")), ConfigError);
}

TEST_CASE("report JSON") {
  VerificationReport r;
  r.check_name = "inclusion";
  r.max_residual = 3.0;
  r.tolerance = 0.0;
  r.pass = false;
  r.sample_count = 64;
  const json j = to_json(r);
  CHECK(j.at("check_name") == "inclusion");
  CHECK(j.at("pass") == false);
  CHECK(j.at("sample_count") == 64);
  CHECK(j.at("worst_case").at("s").is_null());

  SuiteResult res;
  res.reports.push_back(r);
  const json s = suite_to_json(res, 42);
  CHECK(s.at("seed") == 42);
  CHECK(s.at("pass") == false);
  CHECK(s.at("reports").size() == 1);
  CHECK_FALSE(s.contains("universal_constants"));
}
