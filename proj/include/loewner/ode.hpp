#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "loewner/complex_geometry.hpp"
#include "loewner/driving_function.hpp"
#include "loewner/herglotz.hpp"

namespace loewner {

struct SolverConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1.0;
  // Distance to the unit circle (disk) or scaled distance to the real axis
  // (half-plane) below which a trajectory counts as escaped.
  double boundary_margin = 1e-9;
  // Chordal |w - lambda(t)| threshold for hull absorption.
  double singularity_margin = 1e-7;
  long max_steps = 10'000'000;

  void validate() const;
  SolverConfig tightened(double rel, double abs) const;
};

enum class TrajectoryStatus { Completed, ExitedDomain, SingularityHit, StepLimit };

const char* to_string(TrajectoryStatus status);
TrajectoryStatus trajectory_status_from_string(const std::string& name);

struct Trajectory {
  std::vector<double> times;
  std::vector<Complex> values;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  // Exit or absorption time for the terminal statuses, NaN otherwise.
  double event_time = std::numeric_limits<double>::quiet_NaN();
  long steps = 0;

  Complex final_value() const { return values.back(); }
  double final_time() const { return times.back(); }
  bool completed() const { return status == TrajectoryStatus::Completed; }
};

/// dw/dxi = G(w, xi) from xi = s to xi = t with w(s) = z.
///
/// With empty `sample_times` every accepted step is recorded; otherwise only
/// the start, the listed times inside (s, t) and the end.
Trajectory solve_forward(const HerglotzField& field, DiskPoint z, double s, double t,
                         const SolverConfig& cfg = {}, std::span<const double> sample_times = {});

/// dw/dt = -G(w, t), w(0) = z, until t_end or until w leaves the disk.
Trajectory solve_decreasing(const HerglotzField& field, DiskPoint z, double t_end,
                            const SolverConfig& cfg = {},
                            std::span<const double> sample_times = {});

/// dw/dsigma = -G(w, sigma) on [s, t] with data w(t) = z; returns w(s).
DiskPoint solve_reverse_endpoint(const HerglotzField& field, DiskPoint z, double s, double t,
                                 const SolverConfig& cfg = {});

enum class ChordalDirection {
  Grow,    // dw/dt = 2 / (w - lambda(t))
  Ungrow,  // dw/dt = -2 / (w - lambda(t))
};

Trajectory chordal_solve(const DrivingFunction& lambda, HalfPlanePoint z, double t_end,
                         ChordalDirection direction, const SolverConfig& cfg = {},
                         std::span<const double> sample_times = {});

/// Grow equation dw/dsigma = 2 / (w - lambda(sigma)) integrated backwards
/// from sigma = t (data w(t) = z) down to sigma = s; returns w(s). With s = 0
/// this evaluates f_t = g_t^{-1} at z.
HalfPlanePoint chordal_reverse_endpoint(const DrivingFunction& lambda, HalfPlanePoint z, double s,
                                        double t, const SolverConfig& cfg = {});

namespace detail {

// Generic problem for the embedded 5(4) integrator. `hint` is a time
// strictly inside the current breakpoint piece.
struct OdeProblem {
  std::function<Complex(Complex y, double t, double hint)> rhs;
  // Both guards are optional. An event fires when a guard returns true.
  std::function<bool(Complex y)> exited;
  std::function<bool(Complex y, double t, double hint)> singular;
};

Trajectory integrate(const OdeProblem& problem, Complex y0, double t0, double t1,
                     const std::vector<double>& breakpoints, std::span<const double> sample_times,
                     const SolverConfig& cfg);

}  // namespace detail

}  // namespace loewner
