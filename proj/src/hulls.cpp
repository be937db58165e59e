#include "loewner/hulls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

constexpr int kCapacityPoints = 16;

void require_real_driver(const DrivingFunction& lambda) {
  if (lambda.empty() || !lambda.is_real()) throw ConfigError("chordal driver must be real");
}

}  // namespace

HcapEstimate hcap_estimate(const DrivingFunction& lambda, double t, double radius,
                           const SolverConfig& cfg) {
  require_real_driver(lambda);
  if (!(t >= 0.0) || t > lambda.horizon()) throw DomainError("hcap time outside driver horizon");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("hcap radius must be positive");
  HcapEstimate out;
  out.radius_ok = radius > 10.0 * std::sqrt(t) + lambda.max_modulus();
  if (t == 0.0) return out;

  const SolverConfig tight = cfg.tightened(std::min(cfg.rel_tol, 1e-13), std::min(cfg.abs_tol, 1e-13));
  std::vector<Complex> zs, gs;
  for (int k = 0; k < kCapacityPoints / 2; ++k) {
    const Complex z = std::polar(radius, std::numbers::pi * (k + 0.5) / (kCapacityPoints / 2));
    const Trajectory traj = chordal_solve(lambda, HalfPlanePoint(z), t, ChordalDirection::Grow, tight);
    if (!traj.completed()) {
      throw SolverError(std::string("hcap sample absorbed: ") + to_string(traj.status));
    }
    zs.push_back(z);
    gs.push_back(traj.final_value());
  }
  for (int k = 0; k < kCapacityPoints / 2; ++k) {
    zs.push_back(std::conj(zs[k]));
    gs.push_back(std::conj(gs[k]));
  }

  // Normal equations for r = c a + d b with a = 1/z, b = 1/z^2.
  Complex aa = 0.0, ab = 0.0, bb = 0.0, ar = 0.0, br = 0.0;
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const Complex a = 1.0 / zs[j];
    const Complex b = a * a;
    const Complex r = gs[j] - zs[j];
    aa += std::conj(a) * a;
    ab += std::conj(a) * b;
    bb += std::conj(b) * b;
    ar += std::conj(a) * r;
    br += std::conj(b) * r;
  }
  const Complex det = aa * bb - ab * std::conj(ab);
  const double scale = std::abs(aa) * std::abs(bb);
  if (!(std::abs(det) > 1e-8 * scale)) {
    out.well_conditioned = false;
    throw SolverError("hcap fit is ill-conditioned");
  }
  const Complex c = (bb * ar - ab * br) / det;
  const Complex d = (aa * br - std::conj(ab) * ar) / det;
  out.coefficient = c.real();
  out.second = d;
  out.time_estimate = 0.5 * c.real();
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const Complex a = 1.0 / zs[j];
    out.fit_residual = std::max(out.fit_residual, std::abs(gs[j] - zs[j] - c * a - d * a * a));
  }
  return out;
}

Complex hull_tip(const DrivingFunction& lambda, double t, double epsilon, const SolverConfig& cfg) {
  require_real_driver(lambda);
  if (!(epsilon > 0.0)) throw ConfigError("hull epsilon must be positive");
  const Complex start = lambda(t) + Complex(0.0, epsilon);
  return chordal_reverse_endpoint(lambda, HalfPlanePoint(start), 0.0, t, cfg).value();
}

HullTrace trace_hull(const DrivingFunction& lambda, const std::vector<double>& times, double epsilon,
                     const SolverConfig& cfg, double capacity_radius) {
  require_real_driver(lambda);
  if (!(epsilon > 0.0)) throw ConfigError("hull epsilon must be positive");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || times[i] > lambda.horizon()) {
      throw DomainError("hull time outside driver horizon");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("hull times must increase");
  }
  HullTrace trace;
  trace.epsilon = epsilon;
  trace.times = times;
  for (double t : times) {
    const Complex a = hull_tip(lambda, t, epsilon, cfg);
    const Complex b = hull_tip(lambda, t, 0.5 * epsilon, cfg);
    trace.tips.push_back(a);
    trace.tips_refined.push_back((4.0 * b - a) / 3.0);
    trace.capacities.push_back(hcap_estimate(lambda, t, capacity_radius, cfg).coefficient);
  }
  return trace;
}

}  // namespace loewner
