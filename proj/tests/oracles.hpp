#pragma once

// Closed-form and independently computed reference values used by the tests.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace oracle {

using Complex = std::complex<double>;

// Square root with the branch cut on the positive real axis, so that values
// land in the closed upper half-plane.
inline Complex upper_sqrt(Complex w) {
  Complex r = std::sqrt(w);
  if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
  return r;
}

// Vertical slit maps for lambda = 0.
inline Complex slit_g(Complex z, double t) { return upper_sqrt(z * z + 4.0 * t); }
inline Complex slit_f(Complex z, double t) { return upper_sqrt(z * z - 4.0 * t); }

// Koebe-type first integral of the radial equation with k = 1.
inline Complex koebe(Complex w) { return w / ((1.0 + w) * (1.0 + w)); }

inline Complex cayley(Complex z) { return Complex(0.0, 1.0) * (1.0 + z) / (1.0 - z); }
inline Complex cayley_inv(Complex w) { return (w - Complex(0.0, 1.0)) / (w + Complex(0.0, 1.0)); }

// Disk field obtained by pulling back the half-plane velocity -2 / (H - lambda)
// through the Cayley map, with H' from a central difference.
inline Complex chordal_pullback(Complex z, double lambda) {
  const double h = 1e-6;
  const Complex dH = (cayley(z + h) - cayley(z - h)) / (2.0 * h);
  return -(2.0 / (cayley(z) - lambda)) / dH;
}

inline double rho(Complex z, Complex w) { return std::abs((w - z) / (1.0 - std::conj(w) * z)); }

// 5 x 5 grid of points in the upper half-plane away from the origin slit.
inline std::vector<Complex> halfplane_grid() {
  std::vector<Complex> out;
  for (double y : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (double x : {-2.0, -1.0, -0.5, 0.5, 1.5}) out.emplace_back(x, y);
  }
  return out;
}

inline std::vector<Complex> disk_points(int n, double radius) {
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) {
    const double r = radius * (0.2 + 0.8 * (k % 5) / 4.0);
    out.push_back(std::polar(r, 2.39996 * k));
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs a shell command and returns its exit status.
inline int run_command(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace oracle
