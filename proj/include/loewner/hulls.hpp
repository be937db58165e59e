#pragma once

#include <vector>

#include "loewner/complex_geometry.hpp"
#include "loewner/driving_function.hpp"
#include "loewner/ode.hpp"

namespace loewner {

inline constexpr double kDefaultHullEpsilon = 1e-4;
inline constexpr double kDefaultCapacityRadius = 100.0;

struct HcapEstimate {
  double coefficient = 0.0;    // c in g_t(z) = z + c / z + d / z^2 + ...
  Complex second = 0.0;        // d
  double time_estimate = 0.0;  // c / 2
  double fit_residual = 0.0;   // max |g - z - c / z - d / z^2| over the samples
  bool radius_ok = true;       // R > 10 sqrt(t) + |lambda|
  bool well_conditioned = true;
};

/// Least-squares fit of the 1/z coefficient of g_t from 16 equispaced points
/// on |z| = R. Points in the lower half-plane use g(conj z) = conj g(z).
HcapEstimate hcap_estimate(const DrivingFunction& lambda, double t,
                           double radius = kDefaultCapacityRadius, const SolverConfig& cfg = {});

struct HullTrace {
  std::vector<double> times;
  std::vector<Complex> tips;          // f_t(lambda(t) + i eps)
  std::vector<Complex> tips_refined;  // (4 tip_{eps/2} - tip_eps) / 3
  double epsilon = kDefaultHullEpsilon;
  std::vector<double> capacities;  // hcap coefficient c per time
  // The driver is not checked for slit-generating regularity.
  bool simple_curve_assumed = true;
};

Complex hull_tip(const DrivingFunction& lambda, double t, double epsilon,
                 const SolverConfig& cfg = {});

HullTrace trace_hull(const DrivingFunction& lambda, const std::vector<double>& times,
                     double epsilon = kDefaultHullEpsilon, const SolverConfig& cfg = {},
                     double capacity_radius = kDefaultCapacityRadius);

}  // namespace loewner
