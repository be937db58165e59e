#include <doctest.h>

#include <random>

#include "loewner/complex_geometry.hpp"
#include "loewner/errors.hpp"
#include "oracles.hpp"

using namespace loewner;

TEST_CASE("pseudo_dist examples") {
  CHECK(pseudo_dist(DiskPoint(0.0, 0.0), DiskPoint(0.3, 0.4)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pseudo_dist(DiskPoint(0.2, -0.1), DiskPoint(0.2, -0.1)) == 0.0);
  CHECK(pseudo_dist(DiskPoint(0.5, 0.0), DiskPoint(-0.5, 0.0)) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("disk and half-plane points reject boundary input") {
  CHECK_THROWS_AS(DiskPoint(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DiskPoint(0.0, -1.5), DomainError);
  CHECK_THROWS_AS(HalfPlanePoint(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(HalfPlanePoint(0.0, -1e-3), DomainError);
  CHECK_NOTHROW(DiskPoint(0.999, 0.0));
}

TEST_CASE("cayley examples") {
  CHECK(std::abs(cayley(DiskPoint(0.0, 0.0)).value() - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(cayley(DiskPoint(0.0, 0.5)).value() - Complex(-0.8, 0.6)) < 1e-15);
  CHECK(std::abs(cayley_inv(HalfPlanePoint(0.0, 1.0)).value()) < 1e-15);
  CHECK_THROWS_AS(cayley(DiskPoint(1.0, 0.0)), DomainError);
}

TEST_CASE("moebius examples") {
  const MoebiusAutomorphism id(DiskPoint(0.0, 0.0), 1.0);
  CHECK(moebius_apply(id, DiskPoint(0.3, -0.2)).value() == Complex(0.3, -0.2));
  const DiskPoint w0(0.4, 0.3);
  CHECK(std::abs(moebius_apply(MoebiusAutomorphism(w0), w0).value()) < 1e-15);
  const double expect = (0.7 - 0.3) / (1.0 - 0.21);
  CHECK(std::abs(moebius_apply(MoebiusAutomorphism(DiskPoint(0.3, 0.0)), DiskPoint(0.7, 0.0)).value() -
                 expect) < 1e-15);
  CHECK_THROWS(MoebiusAutomorphism(DiskPoint(0.1, 0.0), Complex(2.0, 0.0)));
}

TEST_CASE("property: cayley round trip and real segment") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    Complex z(u(rng), u(rng));
    if (std::abs(z) >= 0.99) continue;
    const HalfPlanePoint w = cayley(DiskPoint(z));
    CHECK(w.value().imag() > 0.0);
    CHECK(std::abs(cayley_inv(w).value() - z) < 1e-14);
    CHECK(std::abs(w.value() - oracle::cayley(z)) < 1e-12 * (1.0 + std::abs(w.value())));
  }
  for (double x = -0.95; x < 0.96; x += 0.05) {
    CHECK(std::abs(cayley(DiskPoint(x, 0.0)).value().real()) < 1e-14);
  }
}

TEST_CASE("property: moebius inverse, invariance of rho, comparison bound") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int k = 0; k < 500; ++k) {
    const MoebiusAutomorphism m(DiskPoint(u(rng), u(rng)), std::polar(1.0, ang(rng)));
    const DiskPoint z(u(rng), u(rng)), w(u(rng), u(rng));
    CHECK(std::abs(moebius_inverse(m)(m(z)).value() - z.value()) < 1e-14);
    CHECK(std::abs(pseudo_dist(m(z), m(w)) - pseudo_dist(z, w)) < 1e-12);
    CHECK(std::abs(w.value() - z.value()) <= 2.0 * pseudo_dist(z, w) + 1e-15);
    const double d = pseudo_dist(z, w);
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    CHECK(d == doctest::Approx(pseudo_dist(w, z)).epsilon(1e-14));
    CHECK(d == doctest::Approx(oracle::rho(z.value(), w.value())).epsilon(1e-13));
  }
}
