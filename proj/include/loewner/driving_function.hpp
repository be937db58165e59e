#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace loewner {

enum class SegmentKind { Constant, Linear, SqrtScaled, Tabulated };

const char* to_string(SegmentKind kind);

/// One piece of a driving function on [t_start, t_end].
///
///   Constant    value = a
///   Linear      value = a + b (t - origin)
///   SqrtScaled  value = a + b sqrt(t - origin)
///   Tabulated   piecewise-linear through (sample_times, sample_values)
///
/// `origin` defaults to t_start; it is kept separately so a segment can be
/// split at an interior time without changing its values.
struct Segment {
  SegmentKind kind = SegmentKind::Constant;
  double t_start = 0.0;
  double t_end = 0.0;
  std::complex<double> a{};
  std::complex<double> b{};
  double origin = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> sample_times;
  std::vector<std::complex<double>> sample_values;

  static Segment constant(double t_start, double t_end, std::complex<double> value);
  static Segment linear(double t_start, double t_end, std::complex<double> start_value,
                        std::complex<double> slope);
  static Segment sqrt_scaled(double t_start, double t_end, std::complex<double> offset,
                             std::complex<double> scale);
  static Segment tabulated(std::vector<double> times, std::vector<std::complex<double>> values);

  std::complex<double> raw(double t) const;
};

/// Piecewise scalar control k(t), lambda(t) or tau(t) on [0, horizon].
///
/// Values are complex; real drivers simply carry zero imaginary parts. With
/// `angular` set, the segments describe an angle theta(t) and the driver
/// evaluates to exp(i theta(t)), which keeps interpolated values on the unit
/// circle.
///
/// Breakpoints are the segment boundaries plus every tabulated sample time.
/// The integrator never steps across one; on a piece between two consecutive
/// breakpoints the driver is evaluated through `on_piece`, which uses the
/// formula of the segment containing the piece even at its end points.
class DrivingFunction {
 public:
  DrivingFunction() = default;
  explicit DrivingFunction(std::vector<Segment> segments, bool angular = false,
                           double order = std::numeric_limits<double>::infinity(),
                           bool require_continuity = true);

  static DrivingFunction constant(std::complex<double> value, double horizon);
  static DrivingFunction linear(std::complex<double> start_value, std::complex<double> slope,
                                double horizon);
  static DrivingFunction sqrt_scaled(std::complex<double> offset, std::complex<double> scale,
                                     double horizon);
  static DrivingFunction tabulated(std::vector<double> times,
                                   std::vector<std::complex<double>> values);

  // exp(i theta(t)) wrapper around an angle driver.
  static DrivingFunction angular_from(const DrivingFunction& theta);

  // Right-continuous value at t in [0, horizon]; throws ConfigError outside.
  std::complex<double> operator()(double t) const;
  // Value at t using the segment selected by `hint`, a time strictly inside
  // the current integration piece.
  std::complex<double> on_piece(double t, double hint) const;

  double horizon() const { return horizon_; }
  double order() const { return order_; }
  bool angular() const { return angular_; }
  bool empty() const { return segments_.empty(); }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  bool is_real(double tol = 1e-14) const;
  // Checks |value| = 1 at every breakpoint, piece midpoint and quarter point.
  bool is_unimodular(double tol = 1e-12) const;
  // Max |value| over the same probe set; used for closed-disk checks.
  double max_modulus() const;

  // Same function with additional breakpoints; segments are split, values
  // unchanged. Used to test breakpoint independence of the integrator.
  DrivingFunction with_extra_breakpoints(const std::vector<double>& extra) const;

 private:
  std::size_t segment_index(double t) const;
  std::complex<double> finish(std::complex<double> raw) const;
  std::vector<double> probe_times() const;

  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;
  double horizon_ = 0.0;
  double order_ = std::numeric_limits<double>::infinity();
  bool angular_ = false;
};

}  // namespace loewner
