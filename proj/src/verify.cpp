#include "loewner/verify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include "loewner/errors.hpp"
#include "loewner/parallel.hpp"

namespace loewner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Partial result for one parallel work item; merged in index order so the
// worst case is independent of scheduling.
struct Partial {
  double residual = 0.0;
  long count = 0;
  WorstCase worst;
};

VerificationReport merge(std::string name, double tol, const std::vector<Partial>& parts) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.tolerance = tol;
  for (const Partial& p : parts) {
    if (p.count > 0 && (r.sample_count == 0 || p.residual > r.max_residual)) {
      r.max_residual = p.residual;
      r.worst_case = p.worst;
    }
    r.sample_count += p.count;
  }
  r.pass = r.max_residual <= tol;
  return r;
}

// Non-finite residuals count as infinitely bad.
void record(Partial& p, double residual, WorstCase where) {
  if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
  if (p.count == 0 || residual > p.residual) {
    p.residual = residual;
    p.worst = where;
  }
  ++p.count;
}

std::vector<Complex> circle(double r, int n) {
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / n));
  return out;
}

FamilyGrid resolve_grid(const FamilyGrid& grid, double T) {
  return grid.points.empty() || grid.triples.empty() ? default_family_grid(T) : grid;
}

}  // namespace

VerificationReport check_semigroup(const FamilyHandle& h, const FamilyGrid& grid, double tol) {
  const bool forward = h.direction() == FamilyDirection::Forward;
  std::vector<double> times;
  for (const auto& tr : grid.triples) times.insert(times.end(), {tr.s, tr.u, tr.t});
  h.declare_grid(times, grid.points);
  std::vector<Partial> parts(grid.triples.size());
  parallel_for(grid.triples.size(), [&](std::size_t i) {
    const TimeTriple& tr = grid.triples[i];
    for (Complex z : grid.points) {
      const Complex lhs = h(tr.s, tr.t, z);
      const Complex rhs = forward ? h(tr.u, tr.t, h(tr.s, tr.u, z)) : h(tr.s, tr.u, h(tr.u, tr.t, z));
      record(parts[i], std::abs(lhs - rhs), {tr.s, tr.u, tr.t, z});
    }
  });
  return merge(forward ? "semigroup_forward" : "semigroup_reverse", tol, parts);
}

VerificationReport check_univalence(const FamilyHandle& h, const FamilyGrid& grid,
                                    double separation) {
  std::vector<Partial> parts(grid.triples.size());
  parallel_for(grid.triples.size(), [&](std::size_t i) {
    const TimeTriple& tr = grid.triples[i];
    std::vector<Complex> images;
    for (Complex z : grid.points) images.push_back(h(tr.s, tr.t, z));
    double collisions = 0.0;
    for (std::size_t a = 0; a < images.size(); ++a) {
      for (std::size_t b = a + 1; b < images.size(); ++b) {
        if (grid.points[a] != grid.points[b] && std::abs(images[a] - images[b]) <= separation) {
          collisions += 1.0;
        }
      }
    }
    record(parts[i], collisions, {tr.s, kNaN, tr.t, Complex(kNaN, kNaN)});
  });
  return merge("univalence", 0.0, parts);
}

VerificationReport check_pde_residual(const DecreasingChain& chain,
                                      const std::vector<Complex>& points,
                                      const std::vector<double>& times, double h, double tol) {
  if (!(h > 0.0)) throw ConfigError("PDE step must be positive");
  const auto bps = chain.breakpoints();
  for (double t : times) {
    for (double b : bps) {
      if (std::abs(t - b) < h) {
        throw ConfigError("PDE sample time " + std::to_string(t) + " collides with a breakpoint");
      }
    }
    if (t + h > chain.horizon()) throw ConfigError("PDE sample time too close to the horizon");
  }
  const double dz = 1e-3;
  std::vector<Partial> parts(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    for (Complex z : points) {
      const Complex dt = (chain(t + h, z) - chain(t - h, z)) / (2.0 * h);
      const Complex d = dz;
      const Complex fz = (-chain(t, z + 2.0 * d) + 8.0 * chain(t, z + d) - 8.0 * chain(t, z - d) +
                          chain(t, z - 2.0 * d)) /
                         (12.0 * dz);
      record(parts[i], std::abs(dt - fz * chain.generator(z, t)), {kNaN, kNaN, t, z});
    }
  });
  return merge("pde_residual", tol, parts);
}

PdeConvergence pde_convergence(const DecreasingChain& chain, const std::vector<Complex>& points,
                               const std::vector<double>& times, const std::vector<double>& steps,
                               double order_tol) {
  if (steps.size() < 2) throw ConfigError("PDE convergence needs at least two steps");
  PdeConvergence out;
  out.steps = steps;
  for (double h : steps) out.residuals.push_back(check_pde_residual(chain, points, times, h).max_residual);
  out.report.check_name = "pde_convergence";
  out.report.tolerance = order_tol;
  out.report.sample_count = static_cast<long>(points.size() * times.size() * steps.size());
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    const double order = std::log2(out.residuals[i] / out.residuals[i + 1]) /
                         std::log2(steps[i] / steps[i + 1]);
    out.orders.push_back(order);
    const double dev = std::isfinite(order) ? std::abs(order - 2.0) : std::numeric_limits<double>::infinity();
    if (i == 0 || dev > out.report.max_residual) {
      out.report.max_residual = dev;
      out.report.worst_case.s = steps[i];
      out.report.worst_case.t = steps[i + 1];
    }
  }
  out.report.pass = out.report.max_residual <= order_tol;
  return out;
}

VerificationReport check_characteristics(const DecreasingChain& chain,
                                         const std::vector<Complex>& points,
                                         const std::vector<double>& times, double tol) {
  std::vector<Partial> parts(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Complex z = points[i];
    const Complex f0 = chain(0.0, z);
    for (double t : times) {
      const ChainInverse w = chain.inverse(z, t);
      const Complex* wt = std::get_if<Complex>(&w);
      if (!wt) break;
      record(parts[i], std::abs(chain(t, *wt) - f0), {0.0, kNaN, t, z});
    }
  });
  return merge("characteristics", tol, parts);
}

VerificationReport check_duality_roundtrip(const HerglotzField& field, double T,
                                           const FamilyGrid& grid, double tol,
                                           const SolverConfig& cfg) {
  if (!(T >= 0.0) || T > field.horizon()) throw ConfigError("duality window beyond field horizon");
  const FamilyHandle direct = reverse_family(field, cfg);
  const FamilyHandle dual = duality_transform(evolution_family(field.time_reversed(T), cfg), T);
  std::vector<Partial> parts(grid.triples.size());
  parallel_for(grid.triples.size(), [&](std::size_t i) {
    const TimeTriple& tr = grid.triples[i];
    for (auto [s, t] : {std::pair{tr.s, tr.t}, std::pair{tr.s, tr.u}, std::pair{tr.u, tr.t}}) {
      if (t > T) continue;
      for (Complex z : grid.points) {
        record(parts[i], std::abs(direct(s, t, z) - dual(s, t, z)), {s, kNaN, t, z});
      }
    }
  });
  return merge("duality_roundtrip", tol, parts);
}

VerificationReport check_duality_involution(const FamilyHandle& handle, double T,
                                            const FamilyGrid& grid, double tol) {
  const FamilyHandle twice = duality_transform(duality_transform(handle, T), T);
  std::vector<Partial> parts(grid.triples.size());
  parallel_for(grid.triples.size(), [&](std::size_t i) {
    const TimeTriple& tr = grid.triples[i];
    if (tr.t > T) return;
    for (Complex z : grid.points) {
      record(parts[i], std::abs(handle(tr.s, tr.t, z) - twice(tr.s, tr.t, z)), {tr.s, kNaN, tr.t, z});
    }
  });
  return merge("duality_involution", tol, parts);
}

VerificationReport check_inclusion(const DecreasingChain& chain, double s, double t,
                                   int boundary_samples, double radius) {
  if (!(s <= t)) throw ConfigError("inclusion check needs s <= t");
  VerificationReport r;
  r.check_name = "inclusion";
  r.tolerance = 0.0;
  if (s == t) return r;
  std::vector<Complex> samples;
  if (chain.domain() == ChainDomain::Disk) {
    samples = circle(radius, boundary_samples);
  } else {
    // Half-plane analogue: points just above a window of the real axis.
    for (int k = 0; k < boundary_samples; ++k) {
      const double x = -4.0 + 8.0 * (k + 0.5) / boundary_samples;
      samples.emplace_back(x, 1.0 - radius);
    }
  }
  std::vector<Partial> parts(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const Complex z = samples[i];
    const Complex y = chain(t, z);
    double failed = 0.0;
    if (!chain.contains(y) || std::holds_alternative<OutOfDomain>(chain.inverse(y, s))) failed = 1.0;
    parts[i].count = 1;
    parts[i].residual = failed;
    parts[i].worst = {s, kNaN, t, z};
  });
  double failures = 0.0;
  for (const Partial& p : parts) {
    failures += p.residual;
    if (p.residual > 0.0 && r.max_residual == 0.0) r.worst_case = p.worst;
  }
  r.max_residual = failures;
  r.sample_count = static_cast<long>(samples.size());
  r.pass = failures <= 0.0;
  return r;
}

VerificationReport check_schwarz_pick(const HerglotzField& field,
                                      const std::vector<std::pair<Complex, Complex>>& pairs,
                                      double s, double t, int sample_times, double slack,
                                      const SolverConfig& cfg) {
  if (sample_times < 1 || !(t > s)) throw ConfigError("Schwarz-Pick check needs t > s and samples");
  std::vector<double> grid;
  for (int k = 1; k < sample_times; ++k) grid.push_back(s + (t - s) * k / sample_times);
  std::vector<Partial> parts(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [z1, z2] = pairs[i];
    const Trajectory a = solve_forward(field, DiskPoint(z1), s, t, cfg, grid);
    const Trajectory b = solve_forward(field, DiskPoint(z2), s, t, cfg, grid);
    if (!a.completed() || !b.completed()) throw SolverError("Schwarz-Pick trajectory failed");
    double prev = pseudo_dist_unchecked(a.values[0], b.values[0]);
    for (std::size_t k = 1; k < a.values.size(); ++k) {
      const double cur = pseudo_dist_unchecked(a.values[k], b.values[k]);
      record(parts[i], std::max(0.0, cur - prev), {a.times[k - 1], kNaN, a.times[k], z1});
      prev = cur;
    }
  });
  return merge("schwarz_pick", slack, parts);
}

// ---------------------------------------------------------------------------
// Constants

double self_map_ratio(const DiskMap& psi, Complex zeta0, double r, int circle_points) {
  const double denom = std::abs(psi(zeta0) - zeta0);
  const double a = std::abs(zeta0);
  const double scale = a * (1.0 - a * a) * (1.0 - r) * (1.0 - r);
  double best = 0.0;
  for (Complex z : circle(r, circle_points)) {
    const double num = pseudo_dist_unchecked(psi(z), z);
    if (num == 0.0) continue;
    best = std::max(best, denom > 0.0 ? num * scale / denom : std::numeric_limits<double>::infinity());
  }
  return best;
}

double general_map_ratio(const DiskMap& phi, Complex zeta0, double r, int circle_points) {
  const double denom = std::abs(phi(zeta0) - zeta0) + 4.0 * std::abs(phi(0.0));
  const double a = std::abs(zeta0);
  const double scale = a * (1.0 - a) * (1.0 - a) * (1.0 - r) * (1.0 - r);
  double best = 0.0;
  for (Complex z : circle(r, circle_points)) {
    const double num = pseudo_dist_unchecked(phi(z), z);
    if (num == 0.0) continue;
    best = std::max(best, denom > 0.0 ? num * scale / denom : std::numeric_limits<double>::infinity());
  }
  return best;
}

namespace {

struct Blaschke {
  Complex rotation = 1.0;
  std::vector<Complex> zeros;
  bool origin_factor = false;

  Complex operator()(Complex z) const {
    Complex v = rotation * (origin_factor ? z : Complex(1.0));
    for (Complex a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
  }
};

Blaschke random_blaschke(std::mt19937_64& rng, int max_degree, bool origin_factor) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> degree(origin_factor ? 0 : 1, max_degree);
  Blaschke b;
  b.origin_factor = origin_factor;
  // Small rotations keep some samples close to the identity.
  const double spread = unit(rng) < 0.5 ? 0.05 : 2.0 * std::numbers::pi;
  b.rotation = std::polar(1.0, spread * (unit(rng) - 0.5));
  const int n = degree(rng);
  for (int j = 0; j < n; ++j) {
    b.zeros.push_back(std::polar(0.95 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng)));
  }
  return b;
}

}  // namespace

ConstantsReport estimate_universal_constants(const ConstantsPlan& plan) {
  if (plan.samples < 0 || plan.max_degree < 1) throw ConfigError("invalid constants sample plan");
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConstantsReport out;
  out.samples = plan.samples;
  out.seed = plan.seed;
  for (long k = 0; k < plan.samples; ++k) {
    const Blaschke psi = random_blaschke(rng, plan.max_degree - 1, true);
    const Blaschke phi = random_blaschke(rng, plan.max_degree, false);
    const Complex z0 = std::polar(0.05 + 0.9 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
    const double r = 0.05 + 0.9 * unit(rng);
    const double a = self_map_ratio(psi, z0, r, plan.circle_points);
    const double b = general_map_ratio(phi, z0, r, plan.circle_points);
    if (std::isfinite(a)) out.self_map_max = std::max(out.self_map_max, a);
    if (std::isfinite(b)) out.general_map_max = std::max(out.general_map_max, b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

bool SuiteResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "semigroup_forward", "semigroup_reverse", "univalence",    "duality_roundtrip",
      "duality_involution", "characteristics",  "inclusion",     "pde_residual",
      "pde_convergence",   "schwarz_pick",      "universal_constants"};
  return names;
}

const std::vector<std::string>& default_checks() { return known_checks(); }

namespace {

// Sample times in (0, T) at least 2h away from every breakpoint.
std::vector<double> pde_times(const DecreasingChain& chain, double T, double h) {
  std::vector<double> out;
  const auto bps = chain.breakpoints();
  for (double frac : {0.3, 0.55, 0.8}) {
    double t = frac * T;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const bool clear = std::none_of(bps.begin(), bps.end(),
                                      [&](double b) { return std::abs(b - t) < 2.0 * h; });
      if (clear) break;
      t += 4.0 * h;
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace

SuiteResult run_suite(const HerglotzField& field, const SuiteOptions& options) {
  const std::vector<std::string>& checks = options.checks.empty() ? default_checks() : options.checks;
  for (const auto& name : checks) {
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
      throw ConfigError("unknown check '" + name + "'");
    }
  }
  const double T = options.T;
  if (!(T > 0.0) || T > field.horizon()) throw ConfigError("suite window T must lie in (0, horizon]");
  const FamilyGrid grid = resolve_grid(options.grid, T);
  const SolverConfig& cfg = options.solver;
  const SolverConfig tight = cfg.tightened(1e-14, 1e-16);

  auto chain_with = [&](const SolverConfig& c) {
    DecreasingChain chain = decreasing_chain(field, c);
    return options.corrupt_time_swap ? chain.time_swapped(T) : chain;
  };

  SuiteResult result;
  for (const auto& name : checks) {
    if (name == "semigroup_forward") {
      result.reports.push_back(check_semigroup(evolution_family(field, cfg), grid));
    } else if (name == "semigroup_reverse") {
      result.reports.push_back(check_semigroup(reverse_family(field, cfg), grid));
    } else if (name == "univalence") {
      result.reports.push_back(check_univalence(evolution_family(field, cfg), grid));
    } else if (name == "duality_roundtrip") {
      result.reports.push_back(check_duality_roundtrip(field, T, grid, 1e-7, cfg));
    } else if (name == "duality_involution") {
      result.reports.push_back(check_duality_involution(reverse_family(field, cfg), T, grid));
    } else if (name == "characteristics") {
      std::vector<double> times;
      for (int k = 1; k <= 10; ++k) times.push_back(T * k / 10.0);
      result.reports.push_back(check_characteristics(chain_with(cfg), grid.points, times));
    } else if (name == "inclusion") {
      result.reports.push_back(check_inclusion(chain_with(cfg), 0.25 * T, T));
    } else if (name == "pde_residual" || name == "pde_convergence") {
      const DecreasingChain chain = chain_with(tight);
      const std::vector<Complex> points{Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.1, -0.3)};
      if (name == "pde_residual") {
        result.reports.push_back(check_pde_residual(chain, points, pde_times(chain, T, 1e-4), 1e-4));
      } else {
        result.reports.push_back(pde_convergence(chain, points, pde_times(chain, T, 1e-3)).report);
      }
    } else if (name == "schwarz_pick") {
      std::vector<std::pair<Complex, Complex>> pairs;
      for (std::size_t i = 0; i + 1 < grid.points.size(); i += 2) {
        pairs.emplace_back(grid.points[i], grid.points[i + 1]);
      }
      result.reports.push_back(check_schwarz_pick(field, pairs, 0.0, T, 20, 1e-9, cfg));
    } else if (name == "universal_constants") {
      ConstantsPlan plan;
      plan.samples = options.constant_samples;
      plan.seed = options.seed;
      result.constants = estimate_universal_constants(plan);
      result.constants_run = true;
    }
  }
  return result;
}

}  // namespace loewner
