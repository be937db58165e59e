#include "loewner/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

constexpr Complex kI(0.0, 1.0);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex kernel(Complex x, Complex z) { return (x + z) / (x - z); }

void merge_times(std::vector<double>& into, const std::vector<double>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Chordal atom data for lambda: boundary point s = H^{-1}(lambda).
struct ChordalAtom {
  Complex s;
  double weight;
  double shift;
};

ChordalAtom chordal_atom(double lambda) {
  const Complex s = cayley_inv_raw(Complex(lambda, 0.0));
  return {s, std::norm(1.0 - s) / 4.0, s.imag() / 2.0};
}

}  // namespace

// ---------------------------------------------------------------------------
// HerglotzFunctionSpec

HerglotzFunctionSpec::HerglotzFunctionSpec(std::vector<HerglotzAtom> atoms, double offset,
                                           double imag_shift)
    : atoms_(std::move(atoms)), offset_(offset), imag_shift_(imag_shift) {
  if (!(offset_ >= 0.0) || !std::isfinite(offset_)) {
    throw ConfigError("Herglotz offset must be a finite nonnegative real");
  }
  if (!std::isfinite(imag_shift_)) throw ConfigError("Herglotz imaginary shift must be finite");
  for (auto& a : atoms_) {
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw ConfigError("Herglotz atom weights must be positive");
    }
    if (std::abs(std::abs(a.point) - 1.0) > 1e-12) {
      throw ConfigError("Herglotz atom points must lie on the unit circle");
    }
    a.point /= std::abs(a.point);
  }
}

HerglotzFunctionSpec HerglotzFunctionSpec::unchecked(std::vector<HerglotzAtom> atoms,
                                                     double offset, double imag_shift) {
  HerglotzFunctionSpec spec;
  spec.atoms_ = std::move(atoms);
  spec.offset_ = offset;
  spec.imag_shift_ = imag_shift;
  return spec;
}

Complex HerglotzFunctionSpec::operator()(Complex z) const {
  Complex sum(offset_, imag_shift_);
  for (const auto& a : atoms_) sum += a.weight * kernel(a.point, z);
  return sum;
}

double HerglotzFunctionSpec::modulus_bound(double r) const {
  double b = std::abs(Complex(offset_, imag_shift_));
  for (const auto& a : atoms_) b += std::abs(a.weight) * (1.0 + r) / (1.0 - r);
  return b;
}

// ---------------------------------------------------------------------------
// HerglotzFamily

HerglotzFamily HerglotzFamily::constant(HerglotzFunctionSpec spec) {
  return HerglotzFamily(Repr(Constant{std::move(spec)}));
}

HerglotzFamily HerglotzFamily::driven(std::vector<DrivenAtom> atoms, DrivingFunction offset,
                                      double imag_shift) {
  if (offset.empty()) throw ConfigError("Herglotz family needs an offset driver");
  if (!offset.is_real()) throw ConfigError("Herglotz offset driver must be real");
  const double horizon = offset.horizon();
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const auto& a = atoms[j];
    const std::string where = "atom " + std::to_string(j);
    if (a.weight.horizon() != horizon || a.point.horizon() != horizon) {
      throw ConfigError(where + ": drivers must share the offset's horizon");
    }
    if (!a.weight.is_real()) throw ConfigError(where + ": weight driver must be real");
    if (!a.point.is_unimodular()) throw ConfigError(where + ": point driver must be unimodular");
  }
  // Nonnegativity of weights and offset is probed at breakpoints and
  // intermediate times; piecewise-linear drivers attain extremes there.
  auto probe_nonneg = [](const DrivingFunction& d, const std::string& what) {
    const auto& bps = d.breakpoints();
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      for (double w : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double t = bps[i] + w * (bps[i + 1] - bps[i]);
        if (d.on_piece(t, 0.5 * (bps[i] + bps[i + 1])).real() < 0.0) {
          throw ConfigError(what + " must be nonnegative");
        }
      }
    }
  };
  probe_nonneg(offset, "Herglotz offset driver");
  for (const auto& a : atoms) probe_nonneg(a.weight, "Herglotz atom weight");
  return HerglotzFamily(Repr(Driven{std::move(atoms), std::move(offset), imag_shift}));
}

HerglotzFamily HerglotzFamily::cayley_chordal(DrivingFunction lambda) {
  if (!lambda.is_real()) throw ConfigError("chordal driver must be real-valued");
  return HerglotzFamily(Repr(CayleyChordal{std::move(lambda)}));
}

Complex HerglotzFamily::operator()(Complex z, double t, double hint) const {
  return std::visit(
      Overloaded{
          [&](const Constant& c) { return c.spec(z); },
          [&](const Driven& d) {
            Complex sum(d.offset.on_piece(t, hint).real(), d.imag_shift);
            for (const auto& a : d.atoms) {
              sum += a.weight.on_piece(t, hint).real() * kernel(a.point.on_piece(t, hint), z);
            }
            return sum;
          },
          [&](const CayleyChordal& c) {
            const ChordalAtom a = chordal_atom(c.lambda.on_piece(t, hint).real());
            return a.weight * kernel(a.s, z) + Complex(0.0, a.shift);
          },
      },
      repr_);
}

HerglotzFunctionSpec HerglotzFamily::at(double t, double hint) const {
  return std::visit(
      Overloaded{
          [&](const Constant& c) { return c.spec; },
          [&](const Driven& d) {
            std::vector<HerglotzAtom> atoms;
            for (const auto& a : d.atoms) {
              const double w = a.weight.on_piece(t, hint).real();
              if (w > 0.0) atoms.push_back({w, a.point.on_piece(t, hint)});
            }
            return HerglotzFunctionSpec::unchecked(std::move(atoms),
                                                   d.offset.on_piece(t, hint).real(), d.imag_shift);
          },
          [&](const CayleyChordal& c) {
            const ChordalAtom a = chordal_atom(c.lambda.on_piece(t, hint).real());
            std::vector<HerglotzAtom> atoms;
            if (a.weight > 0.0) atoms.push_back({a.weight, a.s});
            return HerglotzFunctionSpec::unchecked(std::move(atoms), 0.0, a.shift);
          },
      },
      repr_);
}

double HerglotzFamily::horizon() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return kInfiniteHorizon; },
                        [](const Driven& d) { return d.offset.horizon(); },
                        [](const CayleyChordal& c) { return c.lambda.horizon(); },
                    },
                    repr_);
}

std::vector<double> HerglotzFamily::breakpoints() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return std::vector<double>{0.0}; },
                        [](const Driven& d) {
                          std::vector<double> out = d.offset.breakpoints();
                          for (const auto& a : d.atoms) {
                            merge_times(out, a.weight.breakpoints());
                            merge_times(out, a.point.breakpoints());
                          }
                          return sorted_unique(std::move(out));
                        },
                        [](const CayleyChordal& c) { return c.lambda.breakpoints(); },
                    },
                    repr_);
}

double HerglotzFamily::order() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return std::numeric_limits<double>::infinity(); },
                        [](const Driven& d) {
                          double o = d.offset.order();
                          for (const auto& a : d.atoms) {
                            o = std::min({o, a.weight.order(), a.point.order()});
                          }
                          return o;
                        },
                        [](const CayleyChordal& c) { return c.lambda.order(); },
                    },
                    repr_);
}

// ---------------------------------------------------------------------------
// HerglotzField

const char* to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Radial:
      return "radial";
    case FieldKind::ChordalHalfPlane:
      return "chordal";
    case FieldKind::General:
      return "general";
    case FieldKind::Autonomous:
      return "autonomous";
    case FieldKind::TimeReversed:
      return "time_reversed";
  }
  return "unknown";
}

HerglotzField::HerglotzField(Repr repr) : repr_(std::make_shared<const Repr>(std::move(repr))) {}

HerglotzField HerglotzField::radial(DrivingFunction k) {
  if (k.empty()) throw ConfigError("radial field needs a driver");
  if (!k.is_unimodular()) throw ConfigError("radial driver k(t) must be unimodular");
  return HerglotzField(Repr(Radial{std::move(k)}));
}

HerglotzField HerglotzField::chordal_halfplane(DrivingFunction lambda) {
  if (lambda.empty()) throw ConfigError("chordal field needs a driver");
  if (!lambda.is_real()) throw ConfigError("chordal driver lambda(t) must be real-valued");
  return HerglotzField(Repr(Chordal{std::move(lambda)}));
}

HerglotzField HerglotzField::general(DrivingFunction tau, HerglotzFamily p, double order) {
  if (tau.empty()) throw ConfigError("general field needs a tau driver");
  if (tau.max_modulus() > 1.0 + 1e-12) {
    throw ConfigError("tau(t) must stay in the closed unit disk");
  }
  if (std::isfinite(p.horizon()) && p.horizon() != tau.horizon()) {
    throw ConfigError("tau and p drivers must share one horizon");
  }
  const double o = std::min({order, tau.order(), p.order()});
  return HerglotzField(Repr(General{std::move(tau), std::move(p), o}));
}

HerglotzField HerglotzField::autonomous(Complex tau, HerglotzFunctionSpec p, double horizon) {
  if (std::abs(tau) > 1.0 + 1e-12) throw ConfigError("tau must lie in the closed unit disk");
  if (!(horizon > 0.0)) throw ConfigError("field horizon must be positive");
  return HerglotzField(Repr(Autonomous{tau, std::move(p), horizon}));
}

HerglotzField HerglotzField::time_reversed(double T) const {
  if (!(T >= 0.0) || T > horizon() || !std::isfinite(T)) {
    throw ConfigError("time reversal T must lie in [0, horizon]");
  }
  return HerglotzField(Repr(Reversed{std::make_shared<const HerglotzField>(*this), T}));
}

FieldKind HerglotzField::kind() const {
  return std::visit(Overloaded{
                        [](const Radial&) { return FieldKind::Radial; },
                        [](const Chordal&) { return FieldKind::ChordalHalfPlane; },
                        [](const General&) { return FieldKind::General; },
                        [](const Autonomous&) { return FieldKind::Autonomous; },
                        [](const Reversed&) { return FieldKind::TimeReversed; },
                    },
                    *repr_);
}

double HerglotzField::order() const {
  return std::visit(Overloaded{
                        [](const Radial& r) { return r.k.order(); },
                        [](const Chordal& c) { return c.lambda.order(); },
                        [](const General& g) { return g.order; },
                        [](const Autonomous&) { return std::numeric_limits<double>::infinity(); },
                        [](const Reversed& r) { return r.inner->order(); },
                    },
                    *repr_);
}

double HerglotzField::horizon() const {
  return std::visit(Overloaded{
                        [](const Radial& r) { return r.k.horizon(); },
                        [](const Chordal& c) { return c.lambda.horizon(); },
                        [](const General& g) { return g.tau.horizon(); },
                        [](const Autonomous& a) { return a.horizon; },
                        [](const Reversed& r) { return r.T; },
                    },
                    *repr_);
}

std::vector<double> HerglotzField::breakpoints() const {
  return std::visit(Overloaded{
                        [](const Radial& r) { return r.k.breakpoints(); },
                        [](const Chordal& c) { return c.lambda.breakpoints(); },
                        [](const General& g) {
                          std::vector<double> out = g.tau.breakpoints();
                          for (double b : g.p.breakpoints()) {
                            if (b <= g.tau.horizon()) out.push_back(b);
                          }
                          return sorted_unique(std::move(out));
                        },
                        [](const Autonomous& a) {
                          std::vector<double> out{0.0};
                          if (std::isfinite(a.horizon)) out.push_back(a.horizon);
                          return out;
                        },
                        [](const Reversed& r) {
                          std::vector<double> out{0.0, r.T};
                          for (double b : r.inner->breakpoints()) {
                            if (b <= r.T) out.push_back(r.T - b);
                          }
                          return sorted_unique(std::move(out));
                        },
                    },
                    *repr_);
}

void HerglotzField::check_time(double t) const {
  if (!(t >= 0.0 && t <= horizon())) {
    std::ostringstream os;
    os.precision(17);
    os << "time " << t << " outside field horizon [0, " << horizon() << "]";
    throw DomainError(os.str());
  }
}

Complex HerglotzField::eval_on_piece(Complex z, double t, double hint) const {
  check_time(t);
  const Complex g = std::visit(
      Overloaded{
          [&](const Radial& r) {
            const Complex k = r.k.on_piece(t, hint);
            return -z * (1.0 + k * z) / (1.0 - k * z);
          },
          [&](const Chordal& c) {
            const ChordalAtom a = chordal_atom(c.lambda.on_piece(t, hint).real());
            const Complex p = a.weight * kernel(a.s, z) + Complex(0.0, a.shift);
            return (1.0 - z) * (1.0 - z) * p;
          },
          [&](const General& g) {
            const Complex tau = g.tau.on_piece(t, hint);
            return (tau - z) * (1.0 - std::conj(tau) * z) * g.p(z, t, hint);
          },
          [&](const Autonomous& a) {
            return (a.tau - z) * (1.0 - std::conj(a.tau) * z) * a.p(z);
          },
          [&](const Reversed& r) { return r.inner->eval_on_piece(z, r.T - t, r.T - hint); },
      },
      *repr_);
  if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
    throw DomainError("field evaluation hit a singularity");
  }
  return g;
}

Complex HerglotzField::tau(double t, double hint) const {
  check_time(t);
  return std::visit(Overloaded{
                        [](const Radial&) { return Complex(0.0, 0.0); },
                        [](const Chordal&) { return Complex(1.0, 0.0); },
                        [&](const General& g) { return g.tau.on_piece(t, hint); },
                        [](const Autonomous& a) { return a.tau; },
                        [&](const Reversed& r) { return r.inner->tau(r.T - t, r.T - hint); },
                    },
                    *repr_);
}

HerglotzFunctionSpec HerglotzField::p(double t, double hint) const {
  check_time(t);
  return std::visit(
      Overloaded{
          [&](const Radial& r) {
            return HerglotzFunctionSpec::unchecked({{1.0, std::conj(r.k.on_piece(t, hint))}});
          },
          [&](const Chordal& c) {
            return HerglotzFamily::cayley_chordal(c.lambda).at(t, hint);
          },
          [&](const General& g) { return g.p.at(t, hint); },
          [](const Autonomous& a) { return a.p; },
          [&](const Reversed& r) { return r.inner->p(r.T - t, r.T - hint); },
      },
      *repr_);
}

double HerglotzField::bound(double radius, double t) const {
  if (!(radius >= 0.0 && radius < 1.0)) throw DomainError("bound radius must lie in [0, 1)");
  const Complex tau_t = tau(t);
  const double a = std::abs(tau_t);
  return (a + radius) * (1.0 + a * radius) * p(t).modulus_bound(radius);
}

const DrivingFunction& HerglotzField::driver() const {
  if (const auto* r = std::get_if<Radial>(repr_.get())) return r->k;
  if (const auto* c = std::get_if<Chordal>(repr_.get())) return c->lambda;
  throw ConfigError("field kind has no single driver");
}

Complex HerglotzField::eval_halfplane(Complex w, double t, double singularity_margin) const {
  const auto* c = std::get_if<Chordal>(repr_.get());
  if (c == nullptr) throw ConfigError("half-plane evaluation needs a chordal field");
  check_time(t);
  const double lambda = c->lambda(t).real();
  if (std::abs(w - lambda) < singularity_margin) {
    std::ostringstream os;
    os.precision(17);
    os << "w is within " << singularity_margin << " of the driving value " << lambda;
    throw DomainError(os.str());
  }
  return 2.0 / (w - lambda);
}

Complex HerglotzField::chordal_boundary_point(double t) const {
  const auto* c = std::get_if<Chordal>(repr_.get());
  if (c == nullptr) {
    if (const auto* g = std::get_if<General>(repr_.get())) {
      // Transported chordal fields keep the single boundary atom of p.
      const auto spec = g->p.at(t);
      if (spec.atoms().size() == 1) return spec.atoms().front().point;
    }
    throw ConfigError("field is not chordal");
  }
  check_time(t);
  return cayley_inv_raw(Complex(c->lambda(t).real(), 0.0));
}

HerglotzField radial_field(DrivingFunction k) { return HerglotzField::radial(std::move(k)); }

HerglotzField chordal_field_halfplane(DrivingFunction lambda) {
  return HerglotzField::chordal_halfplane(std::move(lambda));
}

HerglotzField transport_to_disk(const HerglotzField& chordal) {
  if (chordal.kind() != FieldKind::ChordalHalfPlane) {
    throw ConfigError("transport_to_disk needs a chordal half-plane field");
  }
  const DrivingFunction& lambda = chordal.driver();
  return HerglotzField::general(DrivingFunction::constant(1.0, lambda.horizon()),
                                HerglotzFamily::cayley_chordal(lambda), lambda.order());
}

Complex eval_field(const HerglotzField& field, DiskPoint z, double t) { return field.eval(z, t); }

// ---------------------------------------------------------------------------
// Verification by sampling

std::vector<Complex> spiral_disk_samples(int count, double max_radius) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < count; ++j) {
    const double r = max_radius * std::sqrt((j + 0.5) / count);
    out.push_back(std::polar(r, golden * j));
  }
  return out;
}

namespace {

std::vector<double> sample_times(const HerglotzField& field) {
  std::vector<double> ts;
  const auto bps = field.breakpoints();
  if (!std::isfinite(field.horizon()) || bps.size() < 2) return {0.0};
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    for (double w : {0.0, 0.3, 0.7}) ts.push_back(bps[i] + w * (bps[i + 1] - bps[i]));
  }
  ts.push_back(bps.back());
  return ts;
}

constexpr double kPositivitySlack = 1e-12;

}  // namespace

HerglotzReport verify_herglotz(const HerglotzField& field, int sample_count) {
  if (sample_count <= 0) throw ConfigError("sample count must be positive");
  HerglotzReport report;
  const auto zs = spiral_disk_samples(sample_count, 0.995);
  for (double t : sample_times(field)) {
    const auto p = field.p(t);
    for (Complex z : zs) {
      ++report.samples;
      const double re = p(z).real();
      if (re < -kPositivitySlack) report.violations.push_back({z, t, "re_p_negative", re, 0.0});
      const double r = std::abs(z);
      const double limit = field.bound(r, t);
      const double g = std::abs(field.eval(z, t));
      if (g > limit * (1.0 + 1e-12) + 1e-300) {
        report.violations.push_back({z, t, "bound_exceeded", g, limit});
      }
    }
  }
  return report;
}

HerglotzReport verify_herglotz(const HerglotzFunctionSpec& spec, int sample_count) {
  if (sample_count <= 0) throw ConfigError("sample count must be positive");
  HerglotzReport report;
  for (Complex z : spiral_disk_samples(sample_count, 0.995)) {
    ++report.samples;
    const double re = spec(z).real();
    if (re < -kPositivitySlack) report.violations.push_back({z, 0.0, "re_p_negative", re, 0.0});
    const double limit = spec.modulus_bound(std::abs(z));
    if (std::abs(spec(z)) > limit * (1.0 + 1e-12)) {
      report.violations.push_back({z, 0.0, "bound_exceeded", std::abs(spec(z)), limit});
    }
  }
  return report;
}

ChordalFormulaCheck identify_chordal_disk_formula(const DrivingFunction& lambda, int samples) {
  ChordalFormulaCheck out;
  const auto zs = spiral_disk_samples(samples, 0.95);
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const Complex z = zs[j];
    const double t = lambda.horizon() * static_cast<double>(j) / std::max<std::size_t>(1, zs.size() - 1);
    const double l = lambda(t).real();
    const Complex s = cayley_inv_raw(Complex(l, 0.0));
    const Complex pullback = -(2.0 / (cayley_raw(z) - l)) / cayley_derivative(z);
    const Complex cube_diff = 0.5 * std::pow(1.0 - z, 3) * (1.0 - s) / (z - s);
    const Complex diff_cube = 0.5 * (1.0 - z * z * z) * (1.0 - s) / (z - s);
    const double scale = std::max(std::abs(pullback), 1e-300);
    out.cube_of_difference = std::max(out.cube_of_difference, std::abs(cube_diff - pullback) / scale);
    out.difference_of_cube = std::max(out.difference_of_cube, std::abs(diff_cube - pullback) / scale);
    ++out.samples;
  }
  return out;
}

}  // namespace loewner
