#include "loewner/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <tuple>

#include "loewner/errors.hpp"

namespace loewner {

// ---------------------------------------------------------------------------
// Grids

std::vector<Complex> chebyshev_disk_grid(int n, double radius) {
  if (n <= 0 || !(radius > 0.0 && radius < 1.0)) throw ConfigError("invalid Chebyshev grid");
  std::vector<double> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * n)));
  const double scale = radius / (std::sqrt(2.0) * nodes.front());
  std::vector<Complex> out;
  for (double x : nodes) {
    for (double y : nodes) out.emplace_back(scale * x, scale * y);
  }
  return out;
}

std::vector<TimeTriple> uniform_time_triples(double T, int count) {
  if (!(T > 0.0) || count <= 0) throw ConfigError("time triples need T > 0 and count > 0");
  std::vector<TimeTriple> out;
  for (int k = 0; k < count; ++k) {
    const double s = T * k / (2.0 * count);
    const double t = T * (1.0 - k / (3.0 * count));
    const double u = s + (t - s) * (k + 1.0) / (count + 1.0);
    out.push_back({s, u, t});
  }
  return out;
}

FamilyGrid default_family_grid(double T, int n, double radius, int triples) {
  return {chebyshev_disk_grid(n, radius), uniform_time_triples(T, triples)};
}

// ---------------------------------------------------------------------------
// FamilyHandle

const char* to_string(FamilyDirection d) {
  return d == FamilyDirection::Forward ? "forward" : "reverse";
}

struct FamilyHandle::State {
  FamilyDirection direction;
  SolverConfig cfg;
  std::optional<HerglotzField> field;
  // Set for duality transforms.
  std::optional<FamilyHandle> parent;
  double dual_T = 0.0;

  mutable std::mutex mutex;
  std::set<double> grid_times;
  std::set<std::pair<double, double>> grid_points;
  std::map<std::tuple<double, double, double, double>, Complex> memo;
};

FamilyDirection FamilyHandle::direction() const { return state_->direction; }

double FamilyHandle::horizon() const {
  if (state_->field) return state_->field->horizon();
  return kInfiniteHorizon;
}

const SolverConfig& FamilyHandle::config() const { return state_->cfg; }

std::optional<HerglotzField> FamilyHandle::field() const { return state_->field; }

void FamilyHandle::declare_grid(std::vector<double> times, std::vector<Complex> points) const {
  std::lock_guard lock(state_->mutex);
  state_->grid_times.insert(times.begin(), times.end());
  for (Complex z : points) state_->grid_points.insert({z.real(), z.imag()});
}

std::size_t FamilyHandle::memo_size() const {
  std::lock_guard lock(state_->mutex);
  return state_->memo.size();
}

Complex FamilyHandle::compute(double s, double t, Complex z) const {
  const State& st = *state_;
  if (st.parent) {
    const double T = st.dual_T;
    const auto tau = [T](double x) { return std::max(0.0, T - x); };
    return (*st.parent)(tau(t), tau(s), z);
  }
  const HerglotzField& field = *st.field;
  if (st.direction == FamilyDirection::Forward) {
    const Trajectory traj = solve_forward(field, DiskPoint(z), s, t, st.cfg);
    if (!traj.completed()) {
      throw SolverError(std::string("forward solve did not complete: ") + to_string(traj.status));
    }
    return traj.final_value();
  }
  return solve_reverse_endpoint(field, DiskPoint(z), s, t, st.cfg).value();
}

Complex FamilyHandle::operator()(double s, double t, Complex z) const {
  if (!(s >= 0.0) || !(t >= s) || t > horizon()) {
    throw DomainError("family evaluation needs 0 <= s <= t <= horizon");
  }
  if (!DiskPoint::admissible(z)) throw DomainError("family argument outside the disk");
  if (s == t) return z;
  const auto key = std::make_tuple(s, t, z.real(), z.imag());
  bool memoize = false;
  {
    std::lock_guard lock(state_->mutex);
    memoize = state_->grid_times.count(s) && state_->grid_times.count(t) &&
              state_->grid_points.count({z.real(), z.imag()});
    if (memoize) {
      const auto it = state_->memo.find(key);
      if (it != state_->memo.end()) return it->second;
    }
  }
  const Complex value = compute(s, t, z);
  if (memoize) {
    std::lock_guard lock(state_->mutex);
    state_->memo.emplace(key, value);
  }
  return value;
}

DiskPoint FamilyHandle::eval(double s, double t, DiskPoint z) const {
  return DiskPoint((*this)(s, t, z.value()));
}

FamilyHandle evolution_family(const HerglotzField& field, const SolverConfig& cfg) {
  cfg.validate();
  auto st = std::make_shared<FamilyHandle::State>();
  st->direction = FamilyDirection::Forward;
  st->cfg = cfg;
  st->field = field;
  return FamilyHandle(std::move(st));
}

FamilyHandle reverse_family(const HerglotzField& field, const SolverConfig& cfg) {
  cfg.validate();
  auto st = std::make_shared<FamilyHandle::State>();
  st->direction = FamilyDirection::Reverse;
  st->cfg = cfg;
  st->field = field;
  return FamilyHandle(std::move(st));
}

FamilyHandle duality_transform(const FamilyHandle& handle, double T) {
  if (!(T >= 0.0) || !std::isfinite(T) || T > handle.horizon()) {
    throw ConfigError("duality window T must lie in [0, horizon]");
  }
  auto st = std::make_shared<FamilyHandle::State>();
  st->direction = handle.direction() == FamilyDirection::Forward ? FamilyDirection::Reverse
                                                                 : FamilyDirection::Forward;
  st->cfg = handle.config();
  st->parent = handle;
  st->dual_T = T;
  return FamilyHandle(std::move(st));
}

// ---------------------------------------------------------------------------
// DecreasingChain

DecreasingChain::DecreasingChain(HerglotzField field, ChainDomain domain, SolverConfig cfg)
    : field_(std::move(field)), domain_(domain), cfg_(cfg) {
  cfg_.validate();
  if (domain_ == ChainDomain::Disk) family_ = reverse_family(field_, cfg_);
}

DecreasingChain decreasing_chain(const HerglotzField& field, const SolverConfig& cfg) {
  return DecreasingChain(field, ChainDomain::Disk, cfg);
}

DecreasingChain chordal_chain(const HerglotzField& chordal, const SolverConfig& cfg) {
  if (chordal.kind() != FieldKind::ChordalHalfPlane) {
    throw ConfigError("chordal_chain needs a chordal half-plane field");
  }
  return DecreasingChain(chordal, ChainDomain::HalfPlane, cfg);
}

double DecreasingChain::horizon() const { return field_.horizon(); }

std::vector<double> DecreasingChain::breakpoints() const { return field_.breakpoints(); }

bool DecreasingChain::contains(Complex z) const {
  return domain_ == ChainDomain::Disk ? DiskPoint::admissible(z) : HalfPlanePoint::admissible(z);
}

Complex DecreasingChain::operator()(double t, Complex z) const {
  const double tm = mapped(t);
  if (domain_ == ChainDomain::Disk) return (*family_)(0.0, tm, z);
  return chordal_reverse_endpoint(field_.driver(), HalfPlanePoint(z), 0.0, tm, cfg_).value();
}

ChainInverse DecreasingChain::inverse(Complex z, double t) const {
  const double tm = mapped(t);
  const Trajectory traj =
      domain_ == ChainDomain::Disk
          ? solve_decreasing(field_, DiskPoint(z), tm, cfg_)
          : chordal_solve(field_.driver(), HalfPlanePoint(z), tm, ChordalDirection::Grow, cfg_);
  switch (traj.status) {
    case TrajectoryStatus::Completed:
      return traj.final_value();
    case TrajectoryStatus::ExitedDomain:
    case TrajectoryStatus::SingularityHit:
      return OutOfDomain{traj.event_time};
    case TrajectoryStatus::StepLimit:
      break;
  }
  throw SolverError("decreasing solve hit the step limit");
}

DomainTime DecreasingChain::domain_time(Complex z, double t_max) const {
  if (!std::isfinite(t_max)) throw ConfigError("domain_time needs a finite time cap");
  const ChainInverse r = inverse(z, t_max);
  if (const auto* out = std::get_if<OutOfDomain>(&r)) return {out->exit_time, true};
  return {t_max, false};
}

Complex DecreasingChain::generator(Complex z, double t) const {
  const double tm = mapped(t);
  if (domain_ == ChainDomain::Disk) return field_.eval(z, tm);
  // Half-plane generator: dg/dt = -G, G(w) = -2 / (w - lambda).
  return -field_.eval_halfplane(z, tm, cfg_.singularity_margin);
}

DecreasingChain DecreasingChain::relabeled(std::function<double(double)> time_map) const {
  DecreasingChain out = *this;
  if (time_map_) {
    auto inner = time_map_;
    out.time_map_ = [inner, time_map](double t) { return inner(time_map(t)); };
  } else {
    out.time_map_ = std::move(time_map);
  }
  return out;
}

DecreasingChain DecreasingChain::time_swapped(double T) const {
  if (!(T > 0.0) || T > horizon()) throw ConfigError("time swap window must lie in (0, horizon]");
  return relabeled([T](double t) { return std::clamp(T - t, 0.0, T); });
}

ChainInverse chain_inverse(const DecreasingChain& chain, Complex z, double t) {
  return chain.inverse(z, t);
}

DomainTime domain_time(const DecreasingChain& chain, Complex z, double t_max) {
  const double cap = std::isnan(t_max) ? chain.horizon() : t_max;
  return chain.domain_time(z, cap);
}

// ---------------------------------------------------------------------------
// Increasing radial chain

namespace {

std::vector<Complex> acceptance_probes() {
  std::vector<Complex> out{0.0};
  for (double r : {0.25, 0.5}) {
    for (int k = 0; k < 8; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 8.0));
  }
  return out;
}

void require_normalized(const HerglotzField& field) {
  if (field.kind() == FieldKind::Radial) return;
  const auto bps = field.breakpoints();
  std::vector<double> probes;
  if (bps.size() < 2) {
    probes.push_back(0.0);
  } else {
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) probes.push_back(0.5 * (bps[i] + bps[i + 1]));
  }
  for (double t : probes) {
    if (std::abs(field.tau(t)) > 1e-14 || std::abs(field.p(t)(0.0) - 1.0) > 1e-12) {
      throw ConfigError("increasing radial chain needs tau = 0 and p(0, t) = 1");
    }
  }
}

}  // namespace

IncreasingChainRadial increasing_chain_radial(const HerglotzField& field, double T,
                                              const SolverConfig& cfg) {
  require_normalized(field);
  if (!(T > 0.0)) throw ConfigError("truncation time must be positive");
  // Trajectories decay like e^{-t} and are rescaled by e^T, so the error
  // control has to be relative.
  SolverConfig relative = cfg;
  relative.abs_tol = std::min(cfg.abs_tol, 1e-280);
  const FamilyHandle family = evolution_family(field, relative);
  const auto probes = acceptance_probes();
  auto approximant = [&](double horizon_T, Complex z) {
    return std::exp(horizon_T) * family(0.0, horizon_T, z);
  };
  double current = T;
  while (true) {
    const double doubled = 2.0 * current;
    if (doubled > field.horizon()) {
      throw ConfigError("field horizon too short for the increasing chain limit to settle");
    }
    double gap = 0.0;
    for (Complex z : probes) gap = std::max(gap, std::abs(approximant(doubled, z) - approximant(current, z)));
    if (gap < kIncreasingChainAcceptance) return IncreasingChainRadial(family, doubled, gap);
    current = doubled;
  }
}

Complex IncreasingChainRadial::operator()(double s, Complex z) const {
  if (!(s >= 0.0 && s <= T_)) throw DomainError("increasing chain time outside [0, T]");
  return std::exp(T_) * family_(s, T_, z);
}

Complex IncreasingChainRadial::derivative_at_origin(double s) const {
  constexpr int kPoints = 32;
  constexpr double kRadius = 0.1;
  Complex sum = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    const Complex z = std::polar(kRadius, 2.0 * std::numbers::pi * k / kPoints);
    sum += (*this)(s, z) / z;
  }
  return sum / static_cast<double>(kPoints);
}

Complex IncreasingChainRadial::inverse(double t, Complex value, Complex guess) const {
  Complex w = guess;
  for (int it = 0; it < 60; ++it) {
    const double h = 1e-6;
    const Complex fw = (*this)(t, w);
    const Complex d = ((*this)(t, w + h) - (*this)(t, w - h)) / (2.0 * h);
    const Complex step = (fw - value) / d;
    w -= step;
    if (!DiskPoint::admissible(w)) throw SolverError("increasing chain inversion left the disk");
    if (std::abs(step) < 1e-14) break;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Two-point characterization

TwoPointReport two_point_check(const ChainSampler& chain, Complex zeta1, Complex zeta2, double T,
                               const TwoPointOptions& options) {
  if (zeta1 == zeta2) throw ConfigError("two-point check needs distinct points");
  if (!DiskPoint::admissible(zeta1) || !DiskPoint::admissible(zeta2)) {
    throw DomainError("two-point check points must lie in the disk");
  }
  if (!(T > 0.0) || options.base_intervals <= 0 || options.levels <= 0) {
    throw ConfigError("two-point check needs T > 0 and positive grid sizes");
  }
  std::vector<Complex> circle;
  for (int k = 0; k < options.circle_points; ++k) {
    circle.push_back(std::polar(options.radius, 2.0 * std::numbers::pi * k / options.circle_points));
  }

  TwoPointReport report;
  bool all_zero = true;
  for (int level = 0; level < options.levels; ++level) {
    const int n = options.base_intervals << level;
    TwoPointLevel lv;
    lv.intervals = n;
    std::vector<Complex> prev1, prev2;
    Complex a1 = chain(0.0, zeta1);
    Complex a2 = chain(0.0, zeta2);
    std::vector<Complex> prev_circle;
    for (Complex z : circle) prev_circle.push_back(chain(0.0, z));
    for (int k = 1; k <= n; ++k) {
      const double t = T * k / n;
      const Complex b1 = chain(t, zeta1);
      const Complex b2 = chain(t, zeta2);
      const double d1 = std::abs(b1 - a1);
      const double d2 = std::abs(b2 - a2);
      lv.total_variation_1 += d1;
      lv.total_variation_2 += d2;
      const double denom = d1 + d2;
      for (std::size_t j = 0; j < circle.size(); ++j) {
        const Complex cur = chain(t, circle[j]);
        const double num = std::abs(cur - prev_circle[j]);
        prev_circle[j] = cur;
        if (num > 0.0 || denom > 0.0) all_zero = false;
        if (denom > 0.0) {
          lv.ratio = std::max(lv.ratio, num / denom);
        } else if (num > 0.0) {
          lv.ratio = std::numeric_limits<double>::infinity();
        }
      }
      a1 = b1;
      a2 = b2;
    }
    report.levels.push_back(lv);
  }
  report.vacuous = all_zero;
  bool pass = true;
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    if (!std::isfinite(report.levels[i].ratio)) pass = false;
    if (i == 0) continue;
    const double r0 = report.levels[i - 1].ratio;
    const double r1 = report.levels[i].ratio;
    double g = 0.0;
    if (!std::isfinite(r0) || !std::isfinite(r1)) {
      g = std::numeric_limits<double>::infinity();
    } else if (r0 > 0.0) {
      g = r1 / r0 - 1.0;
    } else if (r1 > 0.0) {
      g = std::numeric_limits<double>::infinity();
    }
    report.growth.push_back(g);
    if (!(g < options.max_growth)) pass = false;
  }
  report.pass = pass;
  return report;
}

}  // namespace loewner
