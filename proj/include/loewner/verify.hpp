#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "loewner/families.hpp"

namespace loewner {

struct WorstCase {
  double s = std::numeric_limits<double>::quiet_NaN();
  double u = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  Complex z{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
};

/// pass is always max_residual <= tolerance.
struct VerificationReport {
  std::string check_name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  long sample_count = 0;
  WorstCase worst_case;
};

// EF2 for forward handles, REF2 for reverse handles.
VerificationReport check_semigroup(const FamilyHandle& handle, const FamilyGrid& grid,
                                   double tol = 1e-8);

// Injectivity of phi_{s,t} on the grid points: counts pairs whose images are
// closer than `separation`.
VerificationReport check_univalence(const FamilyHandle& handle, const FamilyGrid& grid,
                                    double separation = 1e-12);

/// |df/dt - f'(z) G(z, t)| with a central time difference of step h and a
/// fourth-order central z-derivative. Throws ConfigError when a sample time is
/// within h of a driver breakpoint.
VerificationReport check_pde_residual(const DecreasingChain& chain,
                                      const std::vector<Complex>& points,
                                      const std::vector<double>& times, double h,
                                      double tol = 1e-7);

struct PdeConvergence {
  std::vector<double> steps;
  std::vector<double> residuals;
  std::vector<double> orders;  // log2(residual(h) / residual(h / 2))
  VerificationReport report;   // max |order - 2| against `order_tol`
};

PdeConvergence pde_convergence(const DecreasingChain& chain, const std::vector<Complex>& points,
                               const std::vector<double>& times,
                               const std::vector<double>& steps = {1e-3, 5e-4, 2.5e-4},
                               double order_tol = 0.2);

/// Drift of f_t(w(t)) along w' = -G(w, t), w(0) = z. Times past the domain
/// time of a point are skipped.
VerificationReport check_characteristics(const DecreasingChain& chain,
                                         const std::vector<Complex>& points,
                                         const std::vector<double>& times, double tol = 1e-8);

/// Direct reverse family against the duality transform of the forward family
/// of the time-reversed field.
VerificationReport check_duality_roundtrip(const HerglotzField& field, double T,
                                           const FamilyGrid& grid, double tol = 1e-7,
                                           const SolverConfig& cfg = {});

// duality_transform applied twice against the original handle on [0, T].
VerificationReport check_duality_involution(const FamilyHandle& handle, double T,
                                            const FamilyGrid& grid, double tol = 1e-10);

/// f_t(z) must lie in Omega_s for z on |z| = radius; max_residual counts the
/// failures (tolerance 0).
VerificationReport check_inclusion(const DecreasingChain& chain, double s, double t,
                                   int boundary_samples = 64, double radius = 0.99);

/// rho(w1(t), w2(t)) along forward trajectories must not increase by more
/// than `slack` between consecutive sample times.
VerificationReport check_schwarz_pick(const HerglotzField& field,
                                      const std::vector<std::pair<Complex, Complex>>& pairs,
                                      double s, double t, int sample_times = 20,
                                      double slack = 1e-9, const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Empirical constants (reporting only)

using DiskMap = std::function<Complex(Complex)>;

/// sup over |zeta| = r of rho(psi(zeta), zeta) |z0| (1 - |z0|^2) (1 - r)^2 / |psi(z0) - z0|
/// for psi(0) = 0. Zero when psi fixes every probe.
double self_map_ratio(const DiskMap& psi, Complex zeta0, double r, int circle_points = 32);

/// sup over |zeta| = r of
/// rho(phi(zeta), zeta) |z0| (1 - |z0|)^2 (1 - r)^2 / (|phi(z0) - z0| + 4 |phi(0)|).
double general_map_ratio(const DiskMap& phi, Complex zeta0, double r, int circle_points = 32);

struct ConstantsPlan {
  long samples = 10000;
  std::uint64_t seed = 20240601;
  int max_degree = 3;
  int circle_points = 32;
};

struct ConstantsReport {
  long samples = 0;
  std::uint64_t seed = 0;
  double self_map_max = 0.0;
  double general_map_max = 0.0;
};

ConstantsReport estimate_universal_constants(const ConstantsPlan& plan = {});

// ---------------------------------------------------------------------------
// Suite

struct SuiteOptions {
  double T = 1.0;
  FamilyGrid grid;  // empty: default grid for T
  std::vector<std::string> checks;  // empty: all default checks
  SolverConfig solver;
  std::uint64_t seed = ConstantsPlan{}.seed;
  long constant_samples = 1000;
  // Replace the decreasing chain by its time-swapped relabeling.
  bool corrupt_time_swap = false;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  ConstantsReport constants;
  bool constants_run = false;
  bool pass() const;
};

const std::vector<std::string>& known_checks();
const std::vector<std::string>& default_checks();

// Throws ConfigError for unknown check names.
SuiteResult run_suite(const HerglotzField& field, const SuiteOptions& options);

}  // namespace loewner
