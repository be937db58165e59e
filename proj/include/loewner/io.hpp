#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "loewner/driving_function.hpp"
#include "loewner/herglotz.hpp"
#include "loewner/hulls.hpp"
#include "loewner/ode.hpp"
#include "loewner/verify.hpp"

namespace loewner::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Numbers

// 17 significant digits, '.' separator, independent of the global locale.
std::string format_double(double x);
// Inverse of format_double; accepts "nan", "inf", "-inf". Throws ConfigError.
double parse_double(const std::string& text);

// ---------------------------------------------------------------------------
// CSV

struct TrajectoryRow {
  double t = 0.0;
  Complex z0;
  Complex w;
  TrajectoryStatus status = TrajectoryStatus::Completed;
};

inline constexpr const char* kTrajectoryHeader = "t,z0_re,z0_im,w_re,w_im,status";
inline constexpr const char* kHullHeader = "t,tip_re,tip_im,tip_refined_re,tip_refined_im,hcap";

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);
std::vector<std::string> split_csv_line(const std::string& line);

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);

void write_hull_csv(std::ostream& out, const HullTrace& trace);

// Two-column (t, value) or three-column (t, re, im) numeric table, optional
// header line. Times must be strictly increasing.
DrivingFunction read_tabulated_driver(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// JSON

json to_json(const VerificationReport& report);
json to_json(const ConstantsReport& report);
json suite_to_json(const SuiteResult& result, std::uint64_t seed);

// ---------------------------------------------------------------------------
// SVG

std::string hull_svg(const HullTrace& trace);

// ---------------------------------------------------------------------------
// Config

// Reads a JSON document; ConfigError on I/O or syntax errors.
json load_config(const std::filesystem::path& path);

// Complex value: number or [re, im].
Complex parse_complex(const json& value, const std::string& key);

// Driver: number or [re, im] (constant on [0, horizon]) or an object with
// `segments`, optional `angular`, `order`, or `file` (tabulated table).
DrivingFunction parse_driver(const json& value, const std::string& key, double horizon,
                             const std::filesystem::path& base_dir);

// `field` section, see README for the grammar.
HerglotzField parse_field(const json& value, const std::filesystem::path& base_dir);

SolverConfig parse_solver(const json& value);

// Points: list of numbers or [re, im] pairs.
std::vector<Complex> parse_points(const json& value, const std::string& key);

// Times: list of numbers or {start, end, count}.
std::vector<double> parse_times(const json& value, const std::string& key);

// Required member access with key-naming errors.
const json& require(const json& object, const std::string& key, const std::string& where);

}  // namespace loewner::io
