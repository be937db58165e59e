#include "loewner/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("solver tolerances must be positive");
  if (!(max_step > 0.0)) throw ConfigError("solver max_step must be positive");
  if (!(boundary_margin > 0.0) || !(boundary_margin < 0.1)) {
    throw ConfigError("solver boundary_margin must lie in (0, 0.1)");
  }
  if (!(singularity_margin > 0.0)) throw ConfigError("solver singularity_margin must be positive");
  if (max_steps <= 0) throw ConfigError("solver max_steps must be positive");
}

SolverConfig SolverConfig::tightened(double rel, double abs) const {
  SolverConfig c = *this;
  c.rel_tol = std::min(c.rel_tol, rel);
  c.abs_tol = std::min(c.abs_tol, abs);
  return c;
}

const char* to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::Completed:
      return "completed";
    case TrajectoryStatus::ExitedDomain:
      return "exited_domain";
    case TrajectoryStatus::SingularityHit:
      return "singularity_hit";
    case TrajectoryStatus::StepLimit:
      return "step_limit";
  }
  return "unknown";
}

TrajectoryStatus trajectory_status_from_string(const std::string& name) {
  for (auto s : {TrajectoryStatus::Completed, TrajectoryStatus::ExitedDomain,
                 TrajectoryStatus::SingularityHit, TrajectoryStatus::StepLimit}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown trajectory status '" + name + "'");
}

namespace detail {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI step control constants.
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
// h shrinks by at most 1/kFacMin and grows by at most kFacMax per step.
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct Step {
  Complex y;
  Complex k7;
  double err = 0.0;
  bool ok = false;
};

class Stepper {
 public:
  Stepper(const OdeProblem& problem, const SolverConfig& cfg) : problem_(problem), cfg_(cfg) {}

  Complex f(Complex y, double t, double hint) const {
    try {
      return problem_.rhs(y, t, hint);
    } catch (const DomainError&) {
      return {std::nan(""), std::nan("")};
    }
  }

  // h is signed.
  Step step(double t, Complex y, Complex k1, double h, double hint) const {
    Step out;
    const Complex k2 = f(y + h * (a21 * k1), t + c2 * h, hint);
    const Complex k3 = f(y + h * (a31 * k1 + a32 * k2), t + c3 * h, hint);
    const Complex k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3), t + c4 * h, hint);
    const Complex k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t + c5 * h, hint);
    const Complex k6 =
        f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t + h, hint);
    const Complex ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Complex k7 = f(ynew, t + h, hint);
    const Complex e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    if (!finite(ynew) || !finite(e) || !finite(k7)) return out;
    const double sk = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y), std::abs(ynew));
    out.y = ynew;
    out.k7 = k7;
    out.err = std::abs(e) / sk;
    out.ok = true;
    return out;
  }

  bool event(Complex y, double t, double hint) const {
    if (problem_.exited && problem_.exited(y)) return true;
    if (problem_.singular && problem_.singular(y, t, hint)) return true;
    return false;
  }

  TrajectoryStatus event_kind(Complex y, double t, double hint) const {
    if (problem_.singular && problem_.singular(y, t, hint)) return TrajectoryStatus::SingularityHit;
    return TrajectoryStatus::ExitedDomain;
  }


  bool has_guards() const { return static_cast<bool>(problem_.exited) || static_cast<bool>(problem_.singular); }

  double initial_step(double t, Complex y, Complex f0, double dir, double hmax, double hint) const {
    const double sk = cfg_.abs_tol + cfg_.rel_tol * std::abs(y);
    const double d0 = std::abs(y) / sk;
    const double d1 = std::abs(f0) / sk;
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, hmax);
    const Complex y1 = y + dir * h0 * f0;
    const Complex f1 = f(y1, t + dir * h0, hint);
    double h1;
    if (!finite(f1)) {
      h1 = h0 * 1e-3;
    } else {
      const double d2 = std::abs(f1 - f0) / sk / h0;
      const double dm = std::max(d1, d2);
      h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    }
    return std::min({100.0 * h0, h1, hmax});
  }

 private:
  const OdeProblem& problem_;
  const SolverConfig& cfg_;
};

}  // namespace

Trajectory integrate(const OdeProblem& problem, Complex y0, double t0, double t1,
                     const std::vector<double>& breakpoints, std::span<const double> sample_times,
                     const SolverConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.times.push_back(t0);
  traj.values.push_back(y0);
  if (t0 == t1) return traj;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const auto inside = [&](double x) { return dir > 0 ? (x > t0 && x < t1) : (x < t0 && x > t1); };

  struct Stop {
    double t;
    bool sample;
  };
  std::vector<Stop> stops;
  for (double b : breakpoints) {
    if (inside(b)) stops.push_back({b, false});
  }
  for (double s : sample_times) {
    if (inside(s)) stops.push_back({s, true});
  }
  stops.push_back({t1, false});
  std::sort(stops.begin(), stops.end(),
            [dir](const Stop& a, const Stop& b) { return dir > 0 ? a.t < b.t : a.t > b.t; });
  // Merge coincident stops, keeping the sample flag.
  std::vector<Stop> merged;
  for (const auto& s : stops) {
    if (!merged.empty() && merged.back().t == s.t) {
      merged.back().sample = merged.back().sample || s.sample;
    } else {
      merged.push_back(s);
    }
  }

  const bool record_steps = sample_times.empty();
  const Stepper stepper(problem, cfg);
  const double eps = std::numeric_limits<double>::epsilon();

  double t = t0;
  Complex y = y0;
  double h = 0.0;
  double facold = 1e-4;
  long steps = 0;

  auto finish = [&](TrajectoryStatus status, double te, Complex ye) {
    traj.times.push_back(te);
    traj.values.push_back(ye);
    traj.status = status;
    traj.event_time = te;
    traj.steps = steps;
    return traj;
  };

  for (const Stop& stop : merged) {
    const double target = stop.t;
    const double hint = 0.5 * (t + target);
    Complex k1 = stepper.f(y, t, hint);
    if (!finite(k1)) {
      throw SolverError("vector field is not finite at the start of an integration piece");
    }
    if (h == 0.0) {
      const double hmax = std::min(cfg.max_step, std::abs(target - t));
      // Floor keeps a near-zero state from starting below the time resolution.
      h = std::max(stepper.initial_step(t, y, k1, dir, hmax, hint),
                   std::min(hmax, 1e-9 * std::max(1.0, std::abs(t))));
    }

    bool reject_streak = false;
    while (t != target) {
      if (steps >= cfg.max_steps) {
        traj.status = TrajectoryStatus::StepLimit;
        traj.steps = steps;
        traj.times.push_back(t);
        traj.values.push_back(y);
        return traj;
      }
      const double remaining = std::abs(target - t);
      h = std::min({h, cfg.max_step, remaining});
      const bool last = h >= remaining * (1.0 - 1e-12);
      if (last) h = remaining;
      const double hmin = 16.0 * eps * std::max(1.0, std::abs(t));
      if (h < hmin && !last) {
        if (stepper.has_guards() && reject_streak) {
          // The event lies below the time resolution at t.
          return finish(problem.singular ? TrajectoryStatus::SingularityHit
                                         : TrajectoryStatus::ExitedDomain,
                        t, y);
        }
        traj.status = TrajectoryStatus::StepLimit;
        traj.steps = steps;
        traj.times.push_back(t);
        traj.values.push_back(y);
        return traj;
      }

      ++steps;
      const Step st = stepper.step(t, y, k1, dir * h, hint);
      if (!st.ok) {
        h *= 0.25;
        reject_streak = true;
        continue;
      }
      if (st.err <= 1.0) {
        const double tnew = last ? target : t + dir * h;
        if (stepper.event(st.y, tnew, hint)) {
          // Bisect the step length for the first event crossing.
          double lo = 0.0;
          double hi = h;
          Complex y_hi = st.y;
          const double resolution = std::max(cfg.abs_tol, 1e-10) * 1e-3;
          for (int it = 0; it < 200 && hi - lo > resolution; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const Step sm = stepper.step(t, y, k1, dir * mid, hint);
            if (!sm.ok || stepper.event(sm.y, t + dir * mid, hint)) {
              hi = mid;
              if (sm.ok) y_hi = sm.y;
            } else {
              lo = mid;
            }
          }
          const double te = (hi == h && last) ? target : t + dir * hi;
          return finish(stepper.event_kind(y_hi, te, hint), te, y_hi);
        }
        t = tnew;
        y = st.y;
        k1 = st.k7;
        if (record_steps && t != target) {
          traj.times.push_back(t);
          traj.values.push_back(y);
        }
        const double fac11 = std::pow(st.err, kExpo1);
        double fac = fac11 / std::pow(facold, kBeta);
        fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
        double hnew = h / fac;
        if (reject_streak) hnew = std::min(hnew, h);
        facold = std::max(st.err, 1e-4);
        reject_streak = false;
        if (!last) h = hnew;
        else h = std::max(h, hnew);
      } else {
        const double fac11 = std::pow(st.err, kExpo1);
        h /= std::min(1.0 / kFacMin, fac11 / kSafety);
        reject_streak = true;
      }
    }
    if (record_steps || stop.sample || target == t1) {
      traj.times.push_back(t);
      traj.values.push_back(y);
    }
  }
  traj.steps = steps;
  traj.status = TrajectoryStatus::Completed;
  return traj;
}

}  // namespace detail

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_window(const HerglotzField& field, double s, double t) {
  if (!(s >= 0.0) || !(t >= s) || t > field.horizon()) {
    throw DomainError("time window [" + fmt(s) + ", " + fmt(t) + "] not within [0, " +
                      fmt(field.horizon()) + "]");
  }
}

detail::OdeProblem disk_problem(const HerglotzField& field, double sign, const SolverConfig& cfg) {
  detail::OdeProblem pb;
  pb.rhs = [&field, sign](Complex y, double t, double hint) {
    return sign * field.eval_on_piece(y, t, hint);
  };
  const double limit = 1.0 - cfg.boundary_margin;
  pb.exited = [limit](Complex y) { return std::abs(y) > limit; };
  return pb;
}

detail::OdeProblem chordal_problem(const DrivingFunction& lambda, double sign,
                                   const SolverConfig& cfg) {
  detail::OdeProblem pb;
  pb.rhs = [&lambda, sign](Complex w, double t, double hint) {
    const double l = lambda.on_piece(t, hint).real();
    return sign * 2.0 / (w - l);
  };
  const double margin = cfg.boundary_margin;
  pb.exited = [margin](Complex w) { return w.imag() < margin * (1.0 + std::abs(w)); };
  const double sing = cfg.singularity_margin;
  pb.singular = [&lambda, sing](Complex w, double t, double hint) {
    return std::abs(w - lambda.on_piece(t, hint).real()) < sing;
  };
  return pb;
}

}  // namespace

Trajectory solve_forward(const HerglotzField& field, DiskPoint z, double s, double t,
                         const SolverConfig& cfg, std::span<const double> sample_times) {
  check_window(field, s, t);
  if (s == t) {
    Trajectory traj;
    traj.times = {s};
    traj.values = {z.value()};
    return traj;
  }
  const auto pb = disk_problem(field, 1.0, cfg);
  return detail::integrate(pb, z.value(), s, t, field.breakpoints(), sample_times, cfg);
}

Trajectory solve_decreasing(const HerglotzField& field, DiskPoint z, double t_end,
                            const SolverConfig& cfg, std::span<const double> sample_times) {
  check_window(field, 0.0, t_end);
  if (t_end == 0.0) {
    Trajectory traj;
    traj.times = {0.0};
    traj.values = {z.value()};
    return traj;
  }
  const auto pb = disk_problem(field, -1.0, cfg);
  return detail::integrate(pb, z.value(), 0.0, t_end, field.breakpoints(), sample_times, cfg);
}

DiskPoint solve_reverse_endpoint(const HerglotzField& field, DiskPoint z, double s, double t,
                                 const SolverConfig& cfg) {
  check_window(field, s, t);
  if (s == t) return z;
  // Integrating sigma from t down to s; the exit guard only catches numerical
  // failure, since these solutions stay in the disk.
  const auto pb = disk_problem(field, -1.0, cfg);
  const Trajectory traj = detail::integrate(pb, z.value(), t, s, field.breakpoints(), {}, cfg);
  if (!traj.completed()) {
    throw SolverError(std::string("reverse endpoint solve failed: ") + to_string(traj.status) +
                      " at sigma=" + fmt(traj.final_time()));
  }
  return DiskPoint(traj.final_value());
}

Trajectory chordal_solve(const DrivingFunction& lambda, HalfPlanePoint z, double t_end,
                         ChordalDirection direction, const SolverConfig& cfg,
                         std::span<const double> sample_times) {
  if (!(t_end >= 0.0) || t_end > lambda.horizon()) {
    throw DomainError("chordal solve end time " + fmt(t_end) + " outside [0, " +
                      fmt(lambda.horizon()) + "]");
  }
  if (t_end == 0.0) {
    Trajectory traj;
    traj.times = {0.0};
    traj.values = {z.value()};
    return traj;
  }
  const double sign = direction == ChordalDirection::Grow ? 1.0 : -1.0;
  const auto pb = chordal_problem(lambda, sign, cfg);
  return detail::integrate(pb, z.value(), 0.0, t_end, lambda.breakpoints(), sample_times, cfg);
}

HalfPlanePoint chordal_reverse_endpoint(const DrivingFunction& lambda, HalfPlanePoint z, double s,
                                        double t, const SolverConfig& cfg) {
  if (!(s >= 0.0) || !(t >= s) || t > lambda.horizon()) {
    throw DomainError("chordal window [" + fmt(s) + ", " + fmt(t) + "] outside driver horizon");
  }
  if (s == t) return z;
  const auto pb = chordal_problem(lambda, 1.0, cfg);
  const Trajectory traj = detail::integrate(pb, z.value(), t, s, lambda.breakpoints(), {}, cfg);
  if (!traj.completed()) {
    throw SolverError(std::string("chordal reverse solve failed: ") + to_string(traj.status) +
                      " at sigma=" + fmt(traj.final_time()));
  }
  return HalfPlanePoint(traj.final_value());
}

}  // namespace loewner
