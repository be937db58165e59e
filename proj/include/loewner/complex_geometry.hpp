#pragma once

#include <complex>

namespace loewner {

using Complex = std::complex<double>;

// Points closer than this to the unit circle are rejected; keeps 1 - conj(w) z
// away from zero in every downstream formula.
inline constexpr double kDiskBoundaryGuard = 1e-12;

/// A point of the open unit disk, |value| < 1 - kDiskBoundaryGuard.
class DiskPoint {
 public:
  explicit DiskPoint(Complex value);
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

  Complex value() const { return value_; }
  double abs() const { return std::abs(value_); }

  static bool admissible(Complex z);

 private:
  Complex value_;
};

/// A point of the open upper half-plane, Im(value) > 0.
class HalfPlanePoint {
 public:
  explicit HalfPlanePoint(Complex value);
  HalfPlanePoint(double re, double im) : HalfPlanePoint(Complex(re, im)) {}

  Complex value() const { return value_; }

  static bool admissible(Complex w);

 private:
  Complex value_;
};

/// Disk automorphism z -> rotation * (z - center) / (1 - conj(center) z).
class MoebiusAutomorphism {
 public:
  MoebiusAutomorphism(DiskPoint center, Complex rotation);
  explicit MoebiusAutomorphism(DiskPoint center) : MoebiusAutomorphism(center, 1.0) {}

  static MoebiusAutomorphism identity() { return MoebiusAutomorphism(DiskPoint(0.0, 0.0)); }

  DiskPoint center() const { return center_; }
  Complex rotation() const { return rotation_; }

  DiskPoint operator()(DiskPoint z) const;
  // Unchecked evaluation on any complex z with 1 - conj(center) z != 0.
  Complex apply(Complex z) const;

  MoebiusAutomorphism inverse() const;

 private:
  DiskPoint center_;
  Complex rotation_;
};

double pseudo_dist(DiskPoint z, DiskPoint w);
// Same formula without domain validation; used on raw solver output.
double pseudo_dist_unchecked(Complex z, Complex w);

DiskPoint moebius_apply(const MoebiusAutomorphism& m, DiskPoint z);
MoebiusAutomorphism moebius_inverse(const MoebiusAutomorphism& m);

/// Cayley map H(z) = i(1+z)/(1-z) from the disk onto the upper half-plane.
HalfPlanePoint cayley(DiskPoint z);
DiskPoint cayley_inv(HalfPlanePoint w);

// Unchecked complex versions. cayley_raw has a pole at z = 1.
Complex cayley_raw(Complex z);
Complex cayley_inv_raw(Complex w);
// H'(z) = 2i / (1-z)^2
Complex cayley_derivative(Complex z);

}  // namespace loewner
