#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/families.hpp"
#include "loewner/hulls.hpp"
#include "loewner/io.hpp"
#include "loewner/parallel.hpp"
#include "loewner/verify.hpp"

namespace loewner::cli {

namespace fs = std::filesystem;
using io::format_double;
using io::json;

namespace {

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool svg = false;
};

struct Scenario {
  json doc;
  fs::path base_dir;
  HerglotzField field = HerglotzField::autonomous(0.0, HerglotzFunctionSpec::constant(1.0));
  SolverConfig solver;
};

Scenario load(const Options& opt) {
  Scenario sc;
  sc.doc = io::load_config(opt.config);
  sc.base_dir = fs::path(opt.config).parent_path();
  sc.field = io::parse_field(io::require(sc.doc, "field", ""), sc.base_dir);
  sc.solver = io::parse_solver(sc.doc.contains("solver") ? sc.doc.at("solver") : json());
  if (opt.tol) {
    sc.solver.rel_tol = *opt.tol;
    sc.solver.abs_tol = std::min(sc.solver.abs_tol, *opt.tol * 1e-2);
    sc.solver.validate();
  }
  return sc;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  if (!f) throw ConfigError("failed writing " + path.string());
}

std::pair<double, double> window(const Scenario& sc) {
  const json& w = io::require(sc.doc, "window", "");
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
    throw ConfigError("key 'window' must be [s, t]");
  }
  const double s = w[0].get<double>(), t = w[1].get<double>();
  if (!(s >= 0.0) || !(t >= s) || t > sc.field.horizon()) {
    throw ConfigError("key 'window' must satisfy 0 <= s <= t <= horizon");
  }
  return {s, t};
}

std::vector<double> interior_samples(double s, double t, long n) {
  std::vector<double> out;
  for (long k = 1; k < n; ++k) out.push_back(s + (t - s) * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

bool halfplane_domain(const Scenario& sc) {
  const std::string fallback = sc.field.kind() == FieldKind::ChordalHalfPlane ? "halfplane" : "disk";
  const std::string d = sc.doc.value("domain", fallback);
  if (d != "disk" && d != "halfplane") throw ConfigError("key 'domain' must be 'disk' or 'halfplane'");
  if (d == "halfplane" && sc.field.kind() != FieldKind::ChordalHalfPlane) {
    throw ConfigError("half-plane domain needs a chordal field");
  }
  return d == "halfplane";
}

void check_points(const std::vector<Complex>& points, bool halfplane) {
  for (Complex z : points) {
    if (halfplane ? !HalfPlanePoint::admissible(z) : !DiskPoint::admissible(z)) {
      throw ConfigError(std::string("point outside the ") + (halfplane ? "half-plane" : "disk"));
    }
  }
}

FamilyGrid grid_from(const json& doc, double T) {
  int n = 5, triples = 10;
  double radius = 0.6;
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    n = g.value("n", n);
    radius = g.value("radius", radius);
    triples = g.value("triples", triples);
  }
  return default_family_grid(T, n, radius, triples);
}

double window_T(const Scenario& sc) {
  const json& v = io::require(sc.doc, "T", "");
  if (!v.is_number()) throw ConfigError("key 'T' must be a number");
  return v.get<double>();
}

// ---------------------------------------------------------------------------

int cmd_evolve(const Options& opt) {
  const Scenario sc = load(opt);
  const bool half = halfplane_domain(sc);
  const auto points = io::parse_points(io::require(sc.doc, "points", ""), "points");
  check_points(points, half);
  const auto [s, t] = window(sc);
  if (half && s != 0.0) throw ConfigError("half-plane evolve needs window start 0");
  const auto samples = interior_samples(s, t, sc.doc.value("samples", 1L));

  std::vector<Trajectory> trajs(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    trajs[i] = half ? chordal_solve(sc.field.driver(), HalfPlanePoint(points[i]), t,
                                    ChordalDirection::Grow, sc.solver, samples)
                    : solve_forward(sc.field, DiskPoint(points[i]), s, t, sc.solver, samples);
  });
  std::vector<io::TrajectoryRow> rows;
  bool step_limit = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    step_limit = step_limit || trajs[i].status == TrajectoryStatus::StepLimit;
    for (std::size_t k = 0; k < trajs[i].times.size(); ++k) {
      rows.push_back({trajs[i].times[k], points[i], trajs[i].values[k], trajs[i].status});
    }
  }
  std::ostringstream csv;
  io::write_trajectory_csv(csv, rows);
  write_file(fs::path(opt.out_dir) / "trajectory.csv", csv.str());
  return step_limit ? kNumericFailure : kOk;
}

int cmd_reverse(const Options& opt) {
  const Scenario sc = load(opt);
  const auto points = io::parse_points(io::require(sc.doc, "points", ""), "points");
  check_points(points, false);
  const auto [s, t] = window(sc);
  const FamilyHandle family = reverse_family(sc.field, sc.solver);
  std::vector<Complex> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) { values[i] = family(s, t, points[i]); });
  std::ostringstream csv;
  csv << "s,t,z_re,z_im,phi_re,phi_im\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    io::write_csv_row(csv, {format_double(s), format_double(t), format_double(points[i].real()),
                            format_double(points[i].imag()), format_double(values[i].real()),
                            format_double(values[i].imag())});
  }
  write_file(fs::path(opt.out_dir) / "reverse.csv", csv.str());
  return kOk;
}

int cmd_chain(const Options& opt) {
  const Scenario sc = load(opt);
  const bool half = halfplane_domain(sc);
  const auto points = io::parse_points(io::require(sc.doc, "points", ""), "points");
  check_points(points, half);
  const auto times = io::parse_times(io::require(sc.doc, "times", ""), "times");
  for (double t : times) {
    if (!(t >= 0.0) || t > sc.field.horizon()) throw ConfigError("key 'times' outside [0, horizon]");
  }
  const DecreasingChain chain =
      half ? chordal_chain(sc.field, sc.solver) : decreasing_chain(sc.field, sc.solver);
  struct Cell {
    Complex f;
    ChainInverse g;
  };
  std::vector<Cell> cells(points.size() * times.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Complex z = points[i / times.size()];
    const double t = times[i % times.size()];
    cells[i] = {chain(t, z), chain.inverse(z, t)};
  });
  std::ostringstream csv;
  csv << "t,z_re,z_im,f_re,f_im,g_re,g_im,exit_time\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Complex z = points[i / times.size()];
    const double t = times[i % times.size()];
    std::vector<std::string> row{format_double(t), format_double(z.real()), format_double(z.imag()),
                                 format_double(cells[i].f.real()), format_double(cells[i].f.imag())};
    if (const auto* g = std::get_if<Complex>(&cells[i].g)) {
      row.insert(row.end(), {format_double(g->real()), format_double(g->imag()), ""});
    } else {
      row.insert(row.end(), {"", "", format_double(std::get<OutOfDomain>(cells[i].g).exit_time)});
    }
    io::write_csv_row(csv, row);
  }
  write_file(fs::path(opt.out_dir) / "chain.csv", csv.str());
  return kOk;
}

int cmd_hull(const Options& opt) {
  const Scenario sc = load(opt);
  if (sc.field.kind() != FieldKind::ChordalHalfPlane) throw ConfigError("hull needs a chordal field");
  const auto times = io::parse_times(io::require(sc.doc, "times", ""), "times");
  const double eps = sc.doc.value("epsilon", kDefaultHullEpsilon);
  const double radius = sc.doc.value("radius", kDefaultCapacityRadius);
  if (!(eps > 0.0)) throw ConfigError("key 'epsilon' must be positive");
  for (double t : times) {
    if (!(t >= 0.0) || t > sc.field.horizon()) throw ConfigError("key 'times' outside [0, horizon]");
  }
  const DrivingFunction& lambda = sc.field.driver();
  // Each time sample is traced independently.
  std::vector<HullTrace> parts(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    parts[i] = trace_hull(lambda, {times[i]}, eps, sc.solver, radius);
  });
  HullTrace trace;
  trace.epsilon = eps;
  for (const auto& p : parts) {
    trace.times.push_back(p.times[0]);
    trace.tips.push_back(p.tips[0]);
    trace.tips_refined.push_back(p.tips_refined[0]);
    trace.capacities.push_back(p.capacities[0]);
  }
  std::ostringstream csv;
  io::write_hull_csv(csv, trace);
  write_file(fs::path(opt.out_dir) / "hull.csv", csv.str());
  if (opt.svg || sc.doc.value("svg", false)) {
    write_file(fs::path(opt.out_dir) / "hull.svg", io::hull_svg(trace));
  }
  return kOk;
}

int cmd_verify(const Options& opt) {
  const Scenario sc = load(opt);
  SuiteOptions so;
  so.T = window_T(sc);
  so.grid = grid_from(sc.doc, so.T);
  so.solver = sc.solver;
  if (sc.doc.contains("checks")) {
    for (const auto& c : sc.doc.at("checks")) {
      if (!c.is_string()) throw ConfigError("key 'checks' must list check names");
      so.checks.push_back(c.get<std::string>());
    }
  }
  if (sc.doc.contains("seed")) so.seed = sc.doc.at("seed").get<std::uint64_t>();
  if (opt.seed) so.seed = *opt.seed;
  so.constant_samples = sc.doc.value("constant_samples", so.constant_samples);
  if (sc.doc.contains("corrupt")) {
    const std::string c = sc.doc.at("corrupt").get<std::string>();
    if (c != "time_swap") throw ConfigError("unknown key value 'corrupt': " + c);
    so.corrupt_time_swap = true;
  }
  const SuiteResult result = run_suite(sc.field, so);
  write_file(fs::path(opt.out_dir) / "report.json", io::suite_to_json(result, so.seed).dump(2) + "\n");
  return result.pass() ? kOk : kVerificationFailed;
}

int cmd_duality(const Options& opt) {
  const Scenario sc = load(opt);
  const double T = window_T(sc);
  if (!(T >= 0.0) || T > sc.field.horizon()) throw ConfigError("key 'T' must lie in [0, horizon]");
  const FamilyGrid grid = grid_from(sc.doc, T > 0.0 ? T : 1.0);
  const FamilyHandle direct = reverse_family(sc.field, sc.solver);
  const FamilyHandle dual =
      duality_transform(evolution_family(sc.field.time_reversed(T), sc.solver), T);

  struct Sample {
    double s, t;
    Complex z, a, b;
  };
  std::vector<std::pair<double, double>> windows;
  for (const auto& tr : grid.triples) {
    if (tr.t <= T) windows.emplace_back(tr.s, tr.t);
  }
  std::vector<Sample> samples(windows.size() * grid.points.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto [s, t] = windows[i / grid.points.size()];
    const Complex z = grid.points[i % grid.points.size()];
    samples[i] = {s, t, z, direct(s, t, z), dual(s, t, z)};
  });
  std::ostringstream csv;
  csv << "s,t,z_re,z_im,direct_re,direct_im,dual_re,dual_im,residual\n";
  for (const auto& p : samples) {
    io::write_csv_row(csv, {format_double(p.s), format_double(p.t), format_double(p.z.real()),
                            format_double(p.z.imag()), format_double(p.a.real()),
                            format_double(p.a.imag()), format_double(p.b.real()),
                            format_double(p.b.imag()), format_double(std::abs(p.a - p.b))});
  }
  write_file(fs::path(opt.out_dir) / "duality.csv", csv.str());

  SuiteResult result;
  const FamilyGrid in_window{grid.points, [&] {
                               std::vector<TimeTriple> v;
                               for (const auto& tr : grid.triples) {
                                 if (tr.t <= T) v.push_back(tr);
                               }
                               return v;
                             }()};
  result.reports.push_back(check_duality_roundtrip(sc.field, T, in_window, 1e-7, sc.solver));
  result.reports.push_back(check_duality_involution(direct, T, in_window));
  write_file(fs::path(opt.out_dir) / "duality_report.json",
             io::suite_to_json(result, opt.seed.value_or(0)).dump(2) + "\n");
  return result.pass() ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic Loewner evolution toolkit"};
  app.require_subcommand(1);
  Options opt;
  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Entry entries[] = {
      {"evolve", "Forward trajectories to trajectory.csv", cmd_evolve},
      {"reverse", "Reverse family samples to reverse.csv", cmd_reverse},
      {"chain", "Decreasing chain samples to chain.csv", cmd_chain},
      {"hull", "Chordal hull trace to hull.csv (and hull.svg)", cmd_hull},
      {"verify", "Verification suite to report.json", cmd_verify},
      {"duality", "Duality comparison to duality.csv and duality_report.json", cmd_duality},
  };
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", opt.config, "Scenario config (JSON)")->required();
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--tol", opt.tol, "Solver relative tolerance");
    sub->add_option("--seed", opt.seed, "Seed for randomized checks");
    sub->add_flag("--svg", opt.svg, "Also write an SVG hull plot");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  for (const auto& e : entries) {
    if (!app.got_subcommand(e.name)) continue;
    try {
      return e.fn(opt);
    } catch (const ConfigError& ex) {
      err << "config error: " << ex.what() << '\n';
      return kConfigError;
    } catch (const fs::filesystem_error& ex) {
      err << "config error: " << ex.what() << '\n';
      return kConfigError;
    } catch (const json::exception& ex) {
      err << "config error: " << ex.what() << '\n';
      return kConfigError;
    } catch (const SolverError& ex) {
      err << "numeric failure: " << ex.what() << '\n';
      return kNumericFailure;
    } catch (const DomainError& ex) {
      err << "numeric failure: " << ex.what() << '\n';
      return kNumericFailure;
    } catch (const std::exception& ex) {
      err << "numeric failure: " << ex.what() << '\n';
      return kNumericFailure;
    }
  }
  return kConfigError;
}

}  // namespace loewner::cli
