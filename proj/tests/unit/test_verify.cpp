#include <doctest.h>

#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/standard_fields.hpp"
#include "loewner/verify.hpp"
#include "oracles.hpp"

using namespace loewner;
using Complex = std::complex<double>;

namespace {

HerglotzField rotating_radial() {
  return radial_field(DrivingFunction::angular_from(DrivingFunction::linear(0.0, 1.0, 1.0)));
}

FamilyGrid degenerate_grid() {
  FamilyGrid g;
  g.points = chebyshev_disk_grid();
  g.triples = {{0.2, 0.2, 0.7}, {0.1, 0.6, 0.6}};
  return g;
}

}  // namespace

TEST_CASE("check_semigroup examples") {
  const FamilyGrid grid = default_family_grid(1.0);
  const VerificationReport fwd = check_semigroup(evolution_family(autonomous_contraction()), grid);
  CHECK(fwd.check_name == "semigroup_forward");
  CHECK(fwd.pass);
  CHECK(fwd.max_residual < 1e-10);
  CHECK(fwd.sample_count == 250);

  const VerificationReport rev = check_semigroup(reverse_family(autonomous_contraction()), grid);
  CHECK(rev.check_name == "semigroup_reverse");
  CHECK(rev.max_residual < 1e-10);

  const VerificationReport deg = check_semigroup(evolution_family(sample_general_field()), degenerate_grid());
  CHECK(deg.max_residual == 0.0);

  const VerificationReport rad = check_semigroup(evolution_family(radial_constant(2.0)), default_family_grid(2.0));
  CHECK(rad.pass);
  CHECK(rad.max_residual < 1e-8);
  CHECK(rad.pass == (rad.max_residual <= rad.tolerance));
}

TEST_CASE("check_semigroup residual follows the solver tolerance") {
  // The residual is solver error; across one decade of rel_tol its log-log
  // slope stays near one.
  const FamilyGrid grid = default_family_grid(2.0);
  double prev = 0.0;
  for (double tol : {1e-6, 1e-7, 1e-8}) {
    SolverConfig c;
    c.rel_tol = tol;
    c.abs_tol = tol * 1e-2;
    const double r = check_semigroup(evolution_family(radial_constant(2.0), c), grid, 1.0).max_residual;
    if (prev > 0.0) {
      const double slope = std::log10(prev / r);
      CHECK(slope > 0.8);
      CHECK(slope < 1.5);
    }
    prev = r;
  }
}

TEST_CASE("check_univalence") {
  const VerificationReport r = check_univalence(reverse_family(sample_general_field()), default_family_grid(2.0));
  CHECK(r.check_name == "univalence");
  CHECK(r.pass);

  // A constant family collapses the grid.
  FamilyGrid g = degenerate_grid();
  g.points = {Complex(0.1), Complex(0.1 + 1e-14)};
  CHECK_FALSE(check_univalence(evolution_family(autonomous_contraction()), g).pass);
}

TEST_CASE("check_pde_residual examples") {
  const DecreasingChain aut = decreasing_chain(autonomous_contraction());
  const std::vector<Complex> pts{0.1, Complex(0.0, 0.2), Complex(-0.15, 0.1)};
  const VerificationReport r = check_pde_residual(aut, pts, {0.3, 0.6}, 1e-4);
  CHECK(r.check_name == "pde_residual");
  CHECK(r.max_residual < 1e-7);
  CHECK(r.pass);

  const VerificationReport early =
      check_pde_residual(decreasing_chain(sample_general_field()), pts, {2e-4}, 1e-4);
  CHECK(early.max_residual < 1e-7);

  // Times too close to a breakpoint are rejected.
  CHECK_THROWS_AS(check_pde_residual(decreasing_chain(sample_general_field()), pts, {0.50005}, 1e-4),
                  ConfigError);
  CHECK_THROWS_AS(check_pde_residual(aut, pts, {0.0}, 1e-4), ConfigError);
}

TEST_CASE("pde residual converges at second order") {
  const DecreasingChain chain =
      decreasing_chain(sample_general_field(), SolverConfig{}.tightened(1e-14, 1e-16));
  const std::vector<Complex> pts{0.1, Complex(0.0, 0.2), Complex(-0.15, 0.1)};
  const PdeConvergence c = pde_convergence(chain, pts, {0.3, 1.2});
  REQUIRE(c.orders.size() == 2);
  for (double o : c.orders) {
    CHECK(o > 1.8);
    CHECK(o < 2.2);
    CHECK(std::pow(2.0, o) > 3.5);
    CHECK(std::pow(2.0, o) < 4.5);
  }
  CHECK(c.report.pass);
}

TEST_CASE("check_characteristics examples") {
  const std::vector<Complex> pts{0.1, Complex(0.0, 0.3), Complex(-0.2, -0.2)};
  const DecreasingChain disk = decreasing_chain(transport_to_disk(chordal_constant(0.0, 2.0)));
  const VerificationReport c = check_characteristics(disk, pts, {0.2, 0.5, 1.0});
  CHECK(c.check_name == "characteristics");
  CHECK(c.max_residual < 1e-8);

  const VerificationReport one = check_characteristics(disk, pts, {0.0});
  CHECK(one.max_residual == 0.0);

  const VerificationReport aut =
      check_characteristics(decreasing_chain(autonomous_contraction()), pts, {0.2, 0.5, 1.0});
  CHECK(aut.max_residual < 1e-9);
}

TEST_CASE("duality checks") {
  const FamilyGrid grid = default_family_grid(1.0);
  const VerificationReport aut = check_duality_roundtrip(autonomous_contraction(), 1.0, grid);
  CHECK(aut.check_name == "duality_roundtrip");
  CHECK(aut.max_residual < 1e-9);

  const VerificationReport zero = check_duality_roundtrip(sample_general_field(), 1.0, degenerate_grid());
  CHECK(zero.max_residual < 1e-15);

  const VerificationReport rot = check_duality_roundtrip(rotating_radial(), 1.0, grid);
  CHECK(rot.max_residual < 1e-7);
  CHECK(rot.pass);

  const VerificationReport inv = check_duality_involution(reverse_family(sample_general_field()), 1.5,
                                                          default_family_grid(1.5));
  CHECK(inv.check_name == "duality_involution");
  CHECK(inv.max_residual < 1e-10);
}

TEST_CASE("check_inclusion examples") {
  const DecreasingChain disk = decreasing_chain(transport_to_disk(chordal_constant(0.0, 2.0)));
  const VerificationReport same = check_inclusion(disk, 0.5, 0.5);
  CHECK(same.pass);
  CHECK(same.max_residual == 0.0);

  const VerificationReport nested = check_inclusion(chordal_chain(chordal_constant(0.0, 2.0)), 0.25, 1.0);
  CHECK(nested.check_name == "inclusion");
  CHECK(nested.pass);
  CHECK(nested.max_residual == 0.0);
  CHECK(check_inclusion(disk, 0.25, 1.0).pass);

  const VerificationReport broken = check_inclusion(disk.time_swapped(1.0), 0.25, 1.0);
  CHECK_FALSE(broken.pass);
  CHECK(broken.max_residual > 0.0);
}

TEST_CASE("check_schwarz_pick") {
  const std::vector<std::pair<Complex, Complex>> pairs{{0.1, Complex(0.3, 0.2)}, {Complex(-0.5, 0.1), 0.6}};
  const VerificationReport r = check_schwarz_pick(sample_general_field(), pairs, 0.0, 2.0);
  CHECK(r.check_name == "schwarz_pick");
  CHECK(r.pass);
  CHECK(r.max_residual <= 1e-9);
}

TEST_CASE("universal constant estimates") {
  const auto id = [](Complex z) { return z; };
  CHECK(self_map_ratio(id, 0.3, 0.5) == 0.0);
  CHECK(general_map_ratio(id, 0.3, 0.5) == 0.0);

  const Complex rot = std::polar(1.0, 1e-3);
  const double r = self_map_ratio([&](Complex z) { return rot * z; }, 0.3, 0.5);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);

  ConstantsPlan plan;
  plan.samples = 200;
  const ConstantsReport a = estimate_universal_constants(plan);
  const ConstantsReport b = estimate_universal_constants(plan);
  CHECK(a.samples == 200);
  CHECK(a.seed == plan.seed);
  CHECK(a.self_map_max == b.self_map_max);
  CHECK(a.general_map_max == b.general_map_max);
  CHECK(std::isfinite(a.self_map_max));
  plan.seed = 5;
  CHECK(estimate_universal_constants(plan).self_map_max != a.self_map_max);
}

TEST_CASE("suite") {
  SuiteOptions opt;
  opt.T = 1.0;
  opt.constant_samples = 100;
  const SuiteResult res = run_suite(autonomous_contraction(), opt);
  CHECK(res.pass());
  CHECK(res.constants_run);
  CHECK(res.reports.size() == default_checks().size() - 1);
  for (const auto& rep : res.reports) {
    CHECK(rep.pass == (rep.max_residual <= rep.tolerance));
  }

  const SuiteResult again = run_suite(autonomous_contraction(), opt);
  REQUIRE(again.reports.size() == res.reports.size());
  for (std::size_t k = 0; k < res.reports.size(); ++k) {
    CHECK(again.reports[k].max_residual == res.reports[k].max_residual);
  }

  SuiteOptions bad = opt;
  bad.checks = {"inclusion"};
  bad.corrupt_time_swap = true;
  const SuiteResult corrupted = run_suite(transport_to_disk(chordal_constant(0.0, 2.0)), bad);
  CHECK_FALSE(corrupted.pass());
  CHECK_FALSE(corrupted.constants_run);

  SuiteOptions unknown = opt;
  unknown.checks = {"semigroup_forward", "nonsense"};
  CHECK_THROWS_AS(run_suite(autonomous_contraction(), unknown), ConfigError);
}
