#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/io.hpp"

namespace loewner::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("not a number: '" + text + "'");
  return x;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    write_csv_row(out, {format_double(r.t), format_double(r.z0.real()), format_double(r.z0.imag()),
                        format_double(r.w.real()), format_double(r.w.imag()), to_string(r.status)});
  }
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    throw ConfigError("trajectory CSV must start with '" + std::string(kTrajectoryHeader) + "'");
  }
  std::vector<TrajectoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != 6) throw ConfigError("trajectory CSV row needs 6 cells: " + line);
    TrajectoryRow r;
    r.t = parse_double(c[0]);
    r.z0 = {parse_double(c[1]), parse_double(c[2])};
    r.w = {parse_double(c[3]), parse_double(c[4])};
    r.status = trajectory_status_from_string(c[5]);
    rows.push_back(r);
  }
  return rows;
}

void write_hull_csv(std::ostream& out, const HullTrace& trace) {
  out << kHullHeader << '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    write_csv_row(out, {format_double(trace.times[i]), format_double(trace.tips[i].real()),
                        format_double(trace.tips[i].imag()),
                        format_double(trace.tips_refined[i].real()),
                        format_double(trace.tips_refined[i].imag()),
                        format_double(trace.capacities[i])});
  }
}

DrivingFunction read_tabulated_driver(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open driver table " + path.string());
  std::vector<double> times;
  std::vector<Complex> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto c = split_csv_line(line);
    if (first) {
      first = false;
      try {
        parse_double(c.at(0));
      } catch (const ConfigError&) {
        continue;  // header line
      }
    }
    if (c.size() != 2 && c.size() != 3) {
      throw ConfigError(path.string() + ": driver rows need 2 or 3 columns");
    }
    const double t = parse_double(c[0]);
    if (!times.empty() && !(t > times.back())) {
      throw ConfigError(path.string() + ": driver times must be strictly increasing");
    }
    times.push_back(t);
    values.emplace_back(parse_double(c[1]), c.size() == 3 ? parse_double(c[2]) : 0.0);
  }
  if (times.size() < 2) throw ConfigError(path.string() + ": driver table needs two rows");
  if (times.front() != 0.0) throw ConfigError(path.string() + ": driver table must start at t = 0");
  return DrivingFunction::tabulated(std::move(times), std::move(values));
}

}  // namespace loewner::io
