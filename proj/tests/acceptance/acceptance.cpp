// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "loewner/families.hpp"
#include "loewner/hulls.hpp"
#include "loewner/io.hpp"
#include "loewner/ode.hpp"
#include "loewner/standard_fields.hpp"
#include "loewner/verify.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace loewner;
using oracle::Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> body;
};

struct NamedField {
  std::string name;
  HerglotzField field;
};

std::vector<NamedField> standard_fields() {
  return {{"radial k=1", radial_constant(2.0)},
          {"chordal lambda=0 (disk)", transport_to_disk(chordal_constant(0.0, 2.0))},
          {"general (tau, p)", sample_general_field()}};
}

std::string cli_path;
fs::path config_dir;
fs::path work_dir;

Outcome c1_vertical_slit() {
  double err = 0.0;
  for (double t : {0.25, 0.5, 1.0}) {
    for (Complex z : oracle::halfplane_grid()) {
      const Trajectory tr =
          chordal_solve(DrivingFunction::constant(0.0, 1.0), HalfPlanePoint(z), t, ChordalDirection::Grow);
      if (!tr.completed()) return {false, "trajectory not completed"};
      err = std::max(err, std::abs(tr.final_value() - oracle::slit_g(z, t)));
    }
  }
  return {err < 1e-8, "max |g - sqrt(z^2+4t)| = " + num(err) + " (< 1e-8)"};
}

Outcome c2_capacity() {
  double err = 0.0;
  for (double lam : {0.0, 5.0}) {
    const HcapEstimate e = hcap_estimate(DrivingFunction::constant(lam, 1.0), 1.0);
    err = std::max(err, std::abs(e.coefficient - 2.0));
  }
  return {err < 1e-5, "max |c - 2| = " + num(err) + " (< 1e-5)"};
}

Outcome c3_hull_tip() {
  const HullTrace tr = trace_hull(DrivingFunction::constant(0.0, 1.0), {1.0});
  const double err = std::abs(tr.tips_refined[0] - Complex(0.0, 2.0));
  return {err < 1e-4, "|tip - 2i| = " + num(err) + " (< 1e-4)"};
}

Outcome c4_radial_first_integral() {
  const HerglotzField field = radial_constant(2.0);
  double err = 0.0;
  const double s = 0.3, t = 1.3;
  for (Complex z : oracle::disk_points(25, 0.9)) {
    const Trajectory tr = solve_forward(field, DiskPoint(z), s, t);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const Complex expect = std::exp(s - tr.times[k]) * oracle::koebe(z);
      err = std::max(err, std::abs(oracle::koebe(tr.values[k]) - expect));
    }
  }
  return {err < 1e-9, "max first-integral residual = " + num(err) + " (< 1e-9)"};
}

Outcome c5_semigroup() {
  Outcome out;
  const FamilyGrid grid = default_family_grid(1.0);
  for (const auto& nf : standard_fields()) {
    const auto ef = check_semigroup(evolution_family(nf.field), grid, 1e-8);
    const auto rf = check_semigroup(reverse_family(nf.field), grid, 1e-8);
    out.pass = out.pass && ef.pass && rf.pass;
    out.detail += nf.name + ": EF2 " + num(ef.max_residual) + ", REF2 " + num(rf.max_residual) + "; ";
  }
  out.detail += "(< 1e-8)";
  return out;
}

Outcome c6_duality() {
  Outcome out;
  const FamilyGrid grid = default_family_grid(1.0);
  for (const auto& nf : standard_fields()) {
    const auto rt = check_duality_roundtrip(nf.field, 1.0, grid, 1e-7);
    const auto inv = check_duality_involution(reverse_family(nf.field), 1.0, grid, 1e-10);
    out.pass = out.pass && rt.pass && inv.pass;
    out.detail += nf.name + ": roundtrip " + num(rt.max_residual) + ", double " +
                  num(inv.max_residual) + "; ";
  }
  out.detail += "(< 1e-7, < 1e-10)";
  return out;
}

Outcome c7_pde_order() {
  Outcome out;
  const SolverConfig tight = SolverConfig{}.tightened(1e-14, 1e-16);
  const std::vector<Complex> points{Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.1, -0.3)};
  std::vector<NamedField> fields{{"autonomous -w", autonomous_contraction()}};
  for (const auto& nf : standard_fields()) fields.push_back(nf);
  for (const auto& nf : fields) {
    const DecreasingChain chain = decreasing_chain(nf.field, tight);
    const PdeConvergence pc = pde_convergence(chain, points, {0.3, 0.62, 0.85});
    bool ok = true;
    for (double o : pc.orders) ok = ok && o >= 1.8 && o <= 2.2;
    out.pass = out.pass && ok;
    out.detail += nf.name + ": orders";
    for (double o : pc.orders) out.detail += " " + std::to_string(o);
    out.detail += "; ";
  }
  out.detail += "(in [1.8, 2.2])";
  return out;
}

Outcome c8_characteristics() {
  Outcome out;
  std::vector<double> times;
  for (int k = 1; k <= 10; ++k) times.push_back(0.1 * k);
  for (const auto& nf : standard_fields()) {
    const DecreasingChain chain = decreasing_chain(nf.field);
    const auto r = check_characteristics(chain, oracle::disk_points(20, 0.6), times, 1e-8);
    out.pass = out.pass && r.pass && r.sample_count > 0;
    out.detail += nf.name + ": " + num(r.max_residual) + " over " + std::to_string(r.sample_count) + "; ";
  }
  out.detail += "(< 1e-8)";
  return out;
}

Outcome c9_domain_time() {
  const DecreasingChain aut = decreasing_chain(autonomous_contraction(4.0));
  const DomainTime d = domain_time(aut, 0.5);
  double err = d.exited ? std::abs(d.time - std::log(2.0)) : INFINITY;
  std::string detail = "autonomous: " + num(err);
  const DecreasingChain ch = chordal_chain(chordal_constant(0.0, 2.0));
  for (double y : {0.5, 1.0, 2.0}) {
    const DomainTime dc = domain_time(ch, Complex(0.0, y));
    const double e = dc.exited ? std::abs(dc.time - y * y / 4.0) : INFINITY;
    // y = 2 exits exactly at the horizon 1 < 2.
    err = std::max(err, e);
    detail += ", y=" + std::to_string(y).substr(0, 3) + ": " + num(e);
  }
  return {err < 1e-8, detail + " (< 1e-8)"};
}

Outcome c10_two_point() {
  const DecreasingChain chain = decreasing_chain(autonomous_contraction(2.0));
  const ChainSampler sampler = [&](double t, Complex z) { return chain(t, z); };
  const Complex z1(0.3, 0.0), z2(0.0, -0.4);
  const TwoPointReport good = two_point_check(sampler, z1, z2, 1.0);
  std::string growth;
  for (double g : good.growth) growth += " " + num(g);

  const ChainSampler adversarial = [&](double t, Complex z) {
    if (z == z1 || z == z2) return z;
    return t < 0.5 ? z : 0.5 * z;
  };
  const TwoPointReport bad = two_point_check(adversarial, z1, z2, 1.0);
  const VerificationReport swapped = check_inclusion(chain.time_swapped(1.0), 0.25, 1.0);
  const bool pass = good.pass && !good.vacuous && !bad.pass && !swapped.pass;
  return {pass, "growth" + growth + " (< 5%); adversarial flagged: " + (bad.pass ? "no" : "yes") +
                    "; time-swapped inclusion failures: " + num(swapped.max_residual)};
}

Outcome c11_schwarz_pick() {
  Outcome out;
  std::vector<NamedField> fields{{"autonomous -w", autonomous_contraction()}};
  for (const auto& nf : standard_fields()) fields.push_back(nf);
  const auto pts = oracle::disk_points(20, 0.8);
  std::vector<std::pair<Complex, Complex>> pairs;
  for (std::size_t i = 0; i < pts.size(); ++i) pairs.emplace_back(pts[i], pts[(i + 7) % pts.size()]);
  for (const auto& nf : fields) {
    const auto r = check_schwarz_pick(nf.field, pairs, 0.0, 1.0, 40, 1e-9);
    out.pass = out.pass && r.pass;
    out.detail += nf.name + ": " + num(r.max_residual) + "; ";
  }
  out.detail += "(increase <= 1e-9)";
  return out;
}

// --- CLI ------------------------------------------------------------------

int cli(const std::string& sub, const fs::path& config, const fs::path& out, const std::string& extra = "") {
  return oracle::run_command(cli_path + " " + sub + " --config " + config.string() + " --out " +
                             out.string() + " " + extra);
}

Outcome c12_cli() {
  Outcome out;
  std::vector<std::string> notes;
  auto fail = [&](const std::string& why) {
    out.pass = false;
    notes.push_back(why);
  };
  fs::remove_all(work_dir);
  struct Run {
    std::string sub, config;
    std::vector<std::string> files;
  };
  const std::vector<Run> runs{{"evolve", "evolve_chordal.json", {"trajectory.csv"}},
                              {"hull", "hull_slit.json", {"hull.csv", "hull.svg"}},
                              {"verify", "verify_autonomous.json", {"report.json"}},
                              {"duality", "duality_autonomous.json", {"duality.csv", "duality_report.json"}}};
  for (const auto& r : runs) {
    const fs::path a = work_dir / (r.sub + "_a"), b = work_dir / (r.sub + "_b");
    const int ca = cli(r.sub, config_dir / r.config, a, "--svg");
    const int cb = cli(r.sub, config_dir / r.config, b, "--svg");
    if (ca != 0 || cb != 0) fail(r.sub + " exit " + std::to_string(ca));
    for (const auto& f : r.files) {
      if (r.sub != "hull" && f == "hull.svg") continue;
      if (!fs::exists(a / f) || oracle::read_file(a / f) != oracle::read_file(b / f)) {
        fail(r.sub + ": " + f + " not byte-stable");
      }
    }
  }

  // Criterion 1 values from the evolve CSV, and byte-identical round trip.
  {
    std::ifstream in(work_dir / "evolve_a" / "trajectory.csv");
    const auto rows = io::read_trajectory_csv(in);
    double err = 0.0;
    int checked = 0;
    for (const auto& row : rows) {
      if (row.t == 0.25 || row.t == 0.5 || row.t == 1.0) {
        err = std::max(err, std::abs(row.w - oracle::slit_g(row.z0, row.t)));
        ++checked;
      }
    }
    if (!(err < 1e-8) || checked != 75) fail("evolve CSV error " + num(err));
    std::ostringstream again;
    io::write_trajectory_csv(again, rows);
    if (again.str() != oracle::read_file(work_dir / "evolve_a" / "trajectory.csv")) {
      fail("trajectory CSV round trip differs");
    }
    notes.push_back("evolve err " + num(err));
  }
  // Criteria 2 and 3 from the hull CSV.
  {
    std::ifstream in(work_dir / "hull_a" / "hull.csv");
    std::string line, last;
    while (std::getline(in, line)) last = line;
    const auto cells = io::split_csv_line(last);
    const double t = io::parse_double(cells.at(0));
    const Complex tip(io::parse_double(cells.at(3)), io::parse_double(cells.at(4)));
    const double hcap = io::parse_double(cells.at(5));
    if (t != 1.0 || std::abs(tip - Complex(0.0, 2.0)) >= 1e-4 || std::abs(hcap - 2.0) >= 1e-5) {
      fail("hull row mismatch");
    }
    notes.push_back("hull tip err " + num(std::abs(tip - Complex(0.0, 2.0))) + ", hcap err " +
                    num(std::abs(hcap - 2.0)));
  }
  // Exit-code contract.
  {
    const fs::path bad = work_dir / "bad";
    fs::create_directories(bad);
    std::ofstream(bad / "nokind.json") << R"({"field": {"driver": 0.0}, "window": [0, 1], "points": [0.1]})";
    std::ofstream(bad / "unknown.json") << R"({"field": {"kind": "autonomous"}, "T": 1, "checks": ["nope"]})";
    std::ofstream(bad / "table.csv") << "t,value\n0,0\n0.5,0.1\n0.4,0.2\n1,0.3\n";
    std::ofstream(bad / "table.json")
        << R"({"field": {"kind": "chordal", "driver": {"file": "table.csv"}}, "times": [0.5]})";
    const int nokind = cli("evolve", bad / "nokind.json", bad / "o");
    const int unknown = cli("verify", bad / "unknown.json", bad / "o");
    const int table = cli("hull", bad / "table.json", bad / "o");
    const int corrupted = cli("verify", config_dir / "verify_corrupted.json", bad / "o");
    const int usage = oracle::run_command(cli_path + " evolve");
    if (nokind != 2 || unknown != 2 || table != 2 || corrupted != 1 || usage != 2) {
      fail("exit codes " + std::to_string(nokind) + std::to_string(unknown) + std::to_string(table) +
           std::to_string(corrupted) + std::to_string(usage));
    }
  }
  for (const auto& n : notes) out.detail += n + "; ";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli") cli_path = argv[++i];
    else if (a == "--configs") config_dir = argv[++i];
  }
  work_dir = fs::current_path() / "acceptance_out";

  const std::vector<Criterion> criteria{
      {1, "vertical-slit chordal oracle", 1.0, c1_vertical_slit},
      {2, "capacity normalization", 5.0, c2_capacity},
      {3, "hull tip", 5.0, c3_hull_tip},
      {4, "radial constant-driver first integral", 1.0, c4_radial_first_integral},
      {5, "semigroup laws", 30.0, c5_semigroup},
      {6, "duality round-trip", 0.0, c6_duality},
      {7, "PDE residual convergence order", 30.0, c7_pde_order},
      {8, "characteristic constancy", 0.0, c8_characteristics},
      {9, "domain-time oracle", 0.0, c9_domain_time},
      {10, "two-point characterization", 0.0, c10_two_point},
      {11, "Schwarz-Pick monotonicity", 0.0, c11_schwarz_pick},
      {12, "CLI contract", 0.0, c12_cli},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (c.id == 12 && cli_path.empty()) {
      std::cout << "FAIL [12] CLI contract: no --cli given\n";
      ++failures;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = "runtime " + num(elapsed) + " s";
    if (c.time_limit > 0.0) {
      timing += " (< " + std::to_string(static_cast<int>(c.time_limit)) + " s)";
      if (elapsed >= c.time_limit) o.pass = false;
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail
              << "; " << timing << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures;
}
