#include "loewner/complex_geometry.hpp"

#include <cmath>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

bool DiskPoint::admissible(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
         std::abs(z) < 1.0 - kDiskBoundaryGuard;
}

DiskPoint::DiskPoint(Complex value) : value_(value) {
  if (!admissible(value)) {
    throw DomainError("point " + describe(value) + " is not strictly inside the unit disk");
  }
}

bool HalfPlanePoint::admissible(Complex w) {
  return std::isfinite(w.real()) && std::isfinite(w.imag()) && w.imag() > 0.0;
}

HalfPlanePoint::HalfPlanePoint(Complex value) : value_(value) {
  if (!admissible(value)) {
    throw DomainError("point " + describe(value) + " is not in the upper half-plane");
  }
}

MoebiusAutomorphism::MoebiusAutomorphism(DiskPoint center, Complex rotation)
    : center_(center), rotation_(rotation) {
  if (std::abs(std::abs(rotation) - 1.0) > 1e-12) {
    throw DomainError("automorphism rotation " + describe(rotation) + " is not unimodular");
  }
  rotation_ = rotation / std::abs(rotation);
}

Complex MoebiusAutomorphism::apply(Complex z) const {
  const Complex a = center_.value();
  return rotation_ * (z - a) / (1.0 - std::conj(a) * z);
}

DiskPoint MoebiusAutomorphism::operator()(DiskPoint z) const {
  const Complex w = apply(z.value());
  // Roundoff can push images of near-boundary points onto the guard band.
  if (!DiskPoint::admissible(w)) {
    const double r = 1.0 - 2.0 * kDiskBoundaryGuard;
    return DiskPoint(w / std::abs(w) * r);
  }
  return DiskPoint(w);
}

MoebiusAutomorphism MoebiusAutomorphism::inverse() const {
  // m^{-1}(w) = conj(e) (w - c) / (1 - conj(c) w) with c = m(0) = -e a.
  const Complex c = -rotation_ * center_.value();
  return MoebiusAutomorphism(DiskPoint(c), std::conj(rotation_));
}

double pseudo_dist_unchecked(Complex z, Complex w) {
  return std::abs((w - z) / (1.0 - std::conj(w) * z));
}

double pseudo_dist(DiskPoint z, DiskPoint w) {
  return pseudo_dist_unchecked(z.value(), w.value());
}

DiskPoint moebius_apply(const MoebiusAutomorphism& m, DiskPoint z) { return m(z); }

MoebiusAutomorphism moebius_inverse(const MoebiusAutomorphism& m) { return m.inverse(); }

Complex cayley_raw(Complex z) {
  const Complex i(0.0, 1.0);
  return i * (1.0 + z) / (1.0 - z);
}

Complex cayley_inv_raw(Complex w) {
  const Complex i(0.0, 1.0);
  return (w - i) / (w + i);
}

Complex cayley_derivative(Complex z) {
  const Complex i(0.0, 1.0);
  return 2.0 * i / ((1.0 - z) * (1.0 - z));
}

HalfPlanePoint cayley(DiskPoint z) {
  const Complex w = cayley_raw(z.value());
  if (!HalfPlanePoint::admissible(w)) {
    throw DomainError("Cayley image of " + describe(z.value()) + " left the half-plane");
  }
  return HalfPlanePoint(w);
}

DiskPoint cayley_inv(HalfPlanePoint w) { return DiskPoint(cayley_inv_raw(w.value())); }

}  // namespace loewner
