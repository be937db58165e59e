#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "loewner/complex_geometry.hpp"
#include "loewner/herglotz.hpp"
#include "loewner/ode.hpp"

namespace loewner {

// ---------------------------------------------------------------------------
// Sampling grids

struct TimeTriple {
  double s = 0.0;
  double u = 0.0;
  double t = 0.0;
};

struct FamilyGrid {
  std::vector<Complex> points;
  std::vector<TimeTriple> triples;
};

// n x n tensor grid of Chebyshev nodes scaled into |z| <= radius.
std::vector<Complex> chebyshev_disk_grid(int n = 5, double radius = 0.6);
// `count` triples 0 <= s < u < t <= T spread uniformly over the window.
std::vector<TimeTriple> uniform_time_triples(double T, int count = 10);
FamilyGrid default_family_grid(double T, int n = 5, double radius = 0.6, int triples = 10);

// ---------------------------------------------------------------------------
// Evolution families

enum class FamilyDirection { Forward, Reverse };

const char* to_string(FamilyDirection d);

/// Two-parameter family phi_{s,t}, 0 <= s <= t, of holomorphic self-maps of
/// the disk.
///
/// Forward handles satisfy phi_{s,t} = phi_{u,t} o phi_{s,u}; reverse handles
/// satisfy phi_{s,t} = phi_{s,u} o phi_{u,t}. Values are computed lazily by
/// the solver (or through a duality transform of another handle). Only
/// arguments on a declared grid are memoized; the cache is guarded by a mutex
/// and copies of a handle share it.
class FamilyHandle {
 public:
  FamilyDirection direction() const;
  double horizon() const;
  const SolverConfig& config() const;
  // Solver-backed handles expose their field; duality transforms do not.
  std::optional<HerglotzField> field() const;

  Complex operator()(double s, double t, Complex z) const;
  DiskPoint eval(double s, double t, DiskPoint z) const;

  void declare_grid(std::vector<double> times, std::vector<Complex> points) const;
  std::size_t memo_size() const;

 private:
  struct State;
  explicit FamilyHandle(std::shared_ptr<State> state) : state_(std::move(state)) {}
  Complex compute(double s, double t, Complex z) const;

  std::shared_ptr<State> state_;

  friend FamilyHandle evolution_family(const HerglotzField&, const SolverConfig&);
  friend FamilyHandle reverse_family(const HerglotzField&, const SolverConfig&);
  friend FamilyHandle duality_transform(const FamilyHandle&, double);
};

/// phi_{s,t}(z) = w(t) for dw/dxi = G(w, xi), w(s) = z.
FamilyHandle evolution_family(const HerglotzField& field, const SolverConfig& cfg = {});
/// phi_{s,t}(z) = w(s) for dw/dsigma = -G(w, sigma), w(t) = z.
FamilyHandle reverse_family(const HerglotzField& field, const SolverConfig& cfg = {});
/// phi^T_{s,t} = phi_{tau(t), tau(s)} with tau(x) = max(0, T - x); the result
/// has the opposite direction and is the identity once s >= T.
FamilyHandle duality_transform(const FamilyHandle& handle, double T);

// ---------------------------------------------------------------------------
// Decreasing chains

enum class ChainDomain { Disk, HalfPlane };

struct OutOfDomain {
  double exit_time = 0.0;  // t(z) < t
};

using ChainInverse = std::variant<Complex, OutOfDomain>;

struct DomainTime {
  double time = 0.0;
  bool exited = false;  // false: the point stays in Omega_t up to `time` (the cap)
};

/// Decreasing Loewner chain f_t with f_0 = id and f_t(D) inside f_s(D) for s <= t.
///
/// Disk chains come from the reverse family of a Herglotz field, f_t =
/// phi_{0,t}. Half-plane chains are the native chordal construction
/// f_t = g_t^{-1}, g_t solving dg/dt = 2 / (g - lambda(t)).
class DecreasingChain {
 public:
  ChainDomain domain() const { return domain_; }
  double horizon() const;
  const HerglotzField& field() const { return field_; }
  const SolverConfig& config() const { return cfg_; }
  std::vector<double> breakpoints() const;

  // f_t(z)
  Complex operator()(double t, Complex z) const;
  // g_t(z) or OutOfDomain(t(z))
  ChainInverse inverse(Complex z, double t) const;
  DomainTime domain_time(Complex z, double t_max) const;
  // Vector field G in the chain's domain, with dF/dt = F'(z) G(z, t).
  Complex generator(Complex z, double t) const;

  // Chain with relabeled time parameter t -> f_{map(t)}; used to construct
  // deliberately broken chains.
  DecreasingChain relabeled(std::function<double(double)> time_map) const;
  DecreasingChain time_swapped(double T) const;

  bool contains(Complex z) const;

 private:
  DecreasingChain(HerglotzField field, ChainDomain domain, SolverConfig cfg);
  double mapped(double t) const { return time_map_ ? time_map_(t) : t; }

  HerglotzField field_;
  ChainDomain domain_;
  SolverConfig cfg_;
  std::optional<FamilyHandle> family_;
  std::function<double(double)> time_map_;

  friend DecreasingChain decreasing_chain(const HerglotzField&, const SolverConfig&);
  friend DecreasingChain chordal_chain(const HerglotzField&, const SolverConfig&);
};

DecreasingChain decreasing_chain(const HerglotzField& field, const SolverConfig& cfg = {});
DecreasingChain chordal_chain(const HerglotzField& chordal, const SolverConfig& cfg = {});

ChainInverse chain_inverse(const DecreasingChain& chain, Complex z, double t);
// Exit time of the decreasing ODE from z, capped at t_max (default: horizon).
DomainTime domain_time(const DecreasingChain& chain, Complex z,
                       double t_max = std::numeric_limits<double>::quiet_NaN());

// ---------------------------------------------------------------------------
// Increasing radial chains

/// f_s = lim e^T phi_{s,T} for a radial field with tau = 0 and p(0, t) = 1,
/// truncated at the first T for which the T and 2T approximants agree to
/// 1e-6 on |z| <= 0.5.
class IncreasingChainRadial {
 public:
  double truncation() const { return T_; }
  double acceptance_gap() const { return gap_; }
  const FamilyHandle& family() const { return family_; }

  Complex operator()(double s, Complex z) const;
  // f_s'(0) by a Cauchy integral.
  Complex derivative_at_origin(double s) const;
  // Solves f_t(w) = value for w in the disk by Newton iteration from `guess`.
  Complex inverse(double t, Complex value, Complex guess) const;

 private:
  IncreasingChainRadial(FamilyHandle family, double T, double gap)
      : family_(std::move(family)), T_(T), gap_(gap) {}

  FamilyHandle family_;
  double T_;
  double gap_;

  friend IncreasingChainRadial increasing_chain_radial(const HerglotzField&, double,
                                                       const SolverConfig&);
};

inline constexpr double kIncreasingChainAcceptance = 1e-6;

IncreasingChainRadial increasing_chain_radial(const HerglotzField& field, double T,
                                              const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Two-point characterization

using ChainSampler = std::function<Complex(double t, Complex z)>;

struct TwoPointOptions {
  int base_intervals = 8;
  int levels = 3;
  double radius = 0.5;
  int circle_points = 32;
  double max_growth = 0.05;
};

struct TwoPointLevel {
  int intervals = 0;
  double total_variation_1 = 0.0;
  double total_variation_2 = 0.0;
  double ratio = 0.0;
};

struct TwoPointReport {
  std::vector<TwoPointLevel> levels;
  std::vector<double> growth;  // relative ratio growth between successive levels
  bool vacuous = false;
  bool pass = false;
};

TwoPointReport two_point_check(const ChainSampler& chain, Complex zeta1, Complex zeta2, double T,
                               const TwoPointOptions& options = {});

}  // namespace loewner
