#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "loewner/complex_geometry.hpp"
#include "loewner/driving_function.hpp"

namespace loewner {

inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

/// One boundary atom of a Herglotz function: weight * (point + z) / (point - z).
struct HerglotzAtom {
  double weight = 0.0;
  Complex point{1.0, 0.0};
};

/// p(z) = offset + i * imag_shift + sum_j weight_j (x_j + z) / (x_j - z).
///
/// With nonnegative weights and offset, Re p >= 0 on the whole disk. The
/// checked constructor enforces that; `unchecked` builds arbitrary
/// combinations so verification code can be exercised on bad input.
class HerglotzFunctionSpec {
 public:
  HerglotzFunctionSpec() = default;
  explicit HerglotzFunctionSpec(std::vector<HerglotzAtom> atoms, double offset = 0.0,
                                double imag_shift = 0.0);

  static HerglotzFunctionSpec constant(double offset) { return HerglotzFunctionSpec({}, offset); }
  static HerglotzFunctionSpec unchecked(std::vector<HerglotzAtom> atoms, double offset = 0.0,
                                        double imag_shift = 0.0);

  Complex operator()(Complex z) const;
  // Upper bound for |p| on the closed disk |z| <= r.
  double modulus_bound(double r) const;

  const std::vector<HerglotzAtom>& atoms() const { return atoms_; }
  double offset() const { return offset_; }
  double imag_shift() const { return imag_shift_; }

 private:
  std::vector<HerglotzAtom> atoms_;
  double offset_ = 0.0;
  double imag_shift_ = 0.0;
};

/// Time-dependent Herglotz function p(., t).
class HerglotzFamily {
 public:
  struct DrivenAtom {
    DrivingFunction weight;  // real, nonnegative
    DrivingFunction point;   // unimodular
  };

  HerglotzFamily() : HerglotzFamily(constant(HerglotzFunctionSpec::constant(1.0))) {}

  static HerglotzFamily constant(HerglotzFunctionSpec spec);
  static HerglotzFamily driven(std::vector<DrivenAtom> atoms, DrivingFunction offset,
                               double imag_shift = 0.0);
  // p of the disk-side chordal field for the real driver lambda:
  //   |1 - s|^2 / 4 * (s + z) / (s - z) + i Im(s) / 2,  s = H^{-1}(lambda(t)).
  static HerglotzFamily cayley_chordal(DrivingFunction lambda);

  Complex operator()(Complex z, double t, double hint) const;
  HerglotzFunctionSpec at(double t, double hint) const;
  HerglotzFunctionSpec at(double t) const { return at(t, t); }

  double horizon() const;
  std::vector<double> breakpoints() const;
  double order() const;

 private:
  struct Constant {
    HerglotzFunctionSpec spec;
  };
  struct Driven {
    std::vector<DrivenAtom> atoms;
    DrivingFunction offset;
    double imag_shift;
  };
  struct CayleyChordal {
    DrivingFunction lambda;
  };
  using Repr = std::variant<Constant, Driven, CayleyChordal>;

  explicit HerglotzFamily(Repr repr) : repr_(std::move(repr)) {}

  Repr repr_;
};

enum class FieldKind { Radial, ChordalHalfPlane, General, Autonomous, TimeReversed };

const char* to_string(FieldKind kind);

/// Non-autonomous Herglotz vector field G(z, t) on the unit disk, always of
/// the form (tau(t) - z)(1 - conj(tau(t)) z) p(z, t) with Re p >= 0.
///
///   Radial            G = -z (1 + k z) / (1 - k z), |k(t)| = 1
///   ChordalHalfPlane  half-plane velocity 2 / (w - lambda(t)); on the disk it
///                     evaluates the Cayley-transported generator, tau = 1
///   General           driven tau(t) in the closed disk and p(., t)
///   Autonomous        constant tau and p
///   TimeReversed      G(z, T - t) on [0, T]
///
/// Immutable; copies share the underlying data.
class HerglotzField {
 public:
  static HerglotzField radial(DrivingFunction k);
  static HerglotzField chordal_halfplane(DrivingFunction lambda);
  static HerglotzField general(DrivingFunction tau, HerglotzFamily p,
                               double order = std::numeric_limits<double>::infinity());
  static HerglotzField autonomous(Complex tau, HerglotzFunctionSpec p,
                                  double horizon = kInfiniteHorizon);

  HerglotzField time_reversed(double T) const;

  FieldKind kind() const;
  double order() const;
  double horizon() const;
  // Sorted times in [0, horizon] (0 always included, horizon when finite).
  std::vector<double> breakpoints() const;

  Complex eval(DiskPoint z, double t) const { return eval(z.value(), t); }
  Complex eval(Complex z, double t) const { return eval_on_piece(z, t, t); }
  // Evaluation with drivers locked to the piece containing `hint`.
  Complex eval_on_piece(Complex z, double t, double hint) const;

  Complex tau(double t, double hint) const;
  Complex tau(double t) const { return tau(t, t); }
  HerglotzFunctionSpec p(double t, double hint) const;
  HerglotzFunctionSpec p(double t) const { return p(t, t); }

  // k_{K,T}(t): bound for |G(z, t)| on |z| <= radius.
  double bound(double radius, double t) const;

  // Radial: k. ChordalHalfPlane: lambda. Throws for other kinds.
  const DrivingFunction& driver() const;

  // ChordalHalfPlane only.
  Complex eval_halfplane(Complex w, double t, double singularity_margin = 1e-7) const;
  Complex chordal_boundary_point(double t) const;

 private:
  struct Radial {
    DrivingFunction k;
  };
  struct Chordal {
    DrivingFunction lambda;
  };
  struct General {
    DrivingFunction tau;
    HerglotzFamily p;
    double order;
  };
  struct Autonomous {
    Complex tau;
    HerglotzFunctionSpec p;
    double horizon;
  };
  struct Reversed {
    std::shared_ptr<const HerglotzField> inner;
    double T;
  };
  using Repr = std::variant<Radial, Chordal, General, Autonomous, Reversed>;

  explicit HerglotzField(Repr repr);
  void check_time(double t) const;

  std::shared_ptr<const Repr> repr_;
};

HerglotzField radial_field(DrivingFunction k);
HerglotzField chordal_field_halfplane(DrivingFunction lambda);
// Disk-side generator of a chordal field as a General field (tau = 1).
HerglotzField transport_to_disk(const HerglotzField& chordal);

Complex eval_field(const HerglotzField& field, DiskPoint z, double t);

struct HerglotzViolation {
  Complex z;
  double t = 0.0;
  std::string kind;  // "re_p_negative" or "bound_exceeded"
  double value = 0.0;
  double limit = 0.0;
};

struct HerglotzReport {
  std::vector<HerglotzViolation> violations;
  int samples = 0;
  bool ok() const { return violations.empty(); }
};

HerglotzReport verify_herglotz(const HerglotzField& field, int sample_count);
HerglotzReport verify_herglotz(const HerglotzFunctionSpec& spec, int sample_count);

/// Maximum relative deviation of two candidate closed forms for the
/// disk-side chordal generator from the numeric Cayley pullback
/// -(2 / (H(z) - lambda)) / H'(z):
///   cube_of_difference  (1/2)(1 - z)^3 (1 - s) / (z - s)
///   difference_of_cube  (1/2)(1 - z^3) (1 - s) / (z - s)
struct ChordalFormulaCheck {
  double cube_of_difference = 0.0;
  double difference_of_cube = 0.0;
  int samples = 0;
};

ChordalFormulaCheck identify_chordal_disk_formula(const DrivingFunction& lambda, int samples);

// Deterministic sample points in the disk with |z| <= max_radius.
std::vector<Complex> spiral_disk_samples(int count, double max_radius);

}  // namespace loewner
