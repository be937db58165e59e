#include "loewner/driving_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loewner/errors.hpp"

namespace loewner {

const char* to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Constant:
      return "constant";
    case SegmentKind::Linear:
      return "linear";
    case SegmentKind::SqrtScaled:
      return "sqrt";
    case SegmentKind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

Segment Segment::constant(double t_start, double t_end, std::complex<double> value) {
  Segment s;
  s.kind = SegmentKind::Constant;
  s.t_start = t_start;
  s.t_end = t_end;
  s.a = value;
  s.origin = t_start;
  return s;
}

Segment Segment::linear(double t_start, double t_end, std::complex<double> start_value,
                        std::complex<double> slope) {
  Segment s;
  s.kind = SegmentKind::Linear;
  s.t_start = t_start;
  s.t_end = t_end;
  s.a = start_value;
  s.b = slope;
  s.origin = t_start;
  return s;
}

Segment Segment::sqrt_scaled(double t_start, double t_end, std::complex<double> offset,
                             std::complex<double> scale) {
  Segment s;
  s.kind = SegmentKind::SqrtScaled;
  s.t_start = t_start;
  s.t_end = t_end;
  s.a = offset;
  s.b = scale;
  s.origin = t_start;
  return s;
}

Segment Segment::tabulated(std::vector<double> times, std::vector<std::complex<double>> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw ConfigError("tabulated segment needs at least two (time, value) samples of equal count");
  }
  Segment s;
  s.kind = SegmentKind::Tabulated;
  s.t_start = times.front();
  s.t_end = times.back();
  s.origin = s.t_start;
  s.sample_times = std::move(times);
  s.sample_values = std::move(values);
  return s;
}

std::complex<double> Segment::raw(double t) const {
  const double o = std::isnan(origin) ? t_start : origin;
  switch (kind) {
    case SegmentKind::Constant:
      return a;
    case SegmentKind::Linear:
      return a + b * (t - o);
    case SegmentKind::SqrtScaled:
      return a + b * std::sqrt(std::max(0.0, t - o));
    case SegmentKind::Tabulated: {
      const auto& ts = sample_times;
      if (t <= ts.front()) return sample_values.front();
      if (t >= ts.back()) return sample_values.back();
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t j = static_cast<std::size_t>(it - ts.begin());
      const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
      return (1.0 - w) * sample_values[j - 1] + w * sample_values[j];
    }
  }
  return a;
}

DrivingFunction::DrivingFunction(std::vector<Segment> segments, bool angular, double order,
                                 bool require_continuity)
    : segments_(std::move(segments)), order_(order), angular_(angular) {
  if (segments_.empty()) throw ConfigError("driving function has no segments");
  if (!(order_ >= 1.0)) throw ConfigError("driving function order must lie in [1, inf]");
  double expected_start = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    Segment& seg = segments_[i];
    if (std::isnan(seg.origin)) seg.origin = seg.t_start;
    const std::string where = "segment " + std::to_string(i) + " (" + to_string(seg.kind) + ")";
    if (!std::isfinite(seg.t_start) || !std::isfinite(seg.t_end) || !(seg.t_end > seg.t_start)) {
      throw ConfigError(where + ": needs finite t_start < t_end");
    }
    if (seg.t_start != expected_start) {
      throw ConfigError(where + ": segments must tile [0, horizon] without gaps or overlaps");
    }
    if (seg.kind == SegmentKind::Tabulated) {
      if (seg.sample_times.size() < 2 || seg.sample_times.size() != seg.sample_values.size()) {
        throw ConfigError(where + ": needs matching sample times and values");
      }
      for (std::size_t j = 1; j < seg.sample_times.size(); ++j) {
        if (!(seg.sample_times[j] > seg.sample_times[j - 1])) {
          throw ConfigError(where + ": sample times must be strictly increasing");
        }
      }
      if (seg.sample_times.front() != seg.t_start || seg.sample_times.back() != seg.t_end) {
        throw ConfigError(where + ": samples must span exactly [t_start, t_end]");
      }
    }
    if (seg.kind == SegmentKind::SqrtScaled && seg.origin > seg.t_start) {
      throw ConfigError(where + ": sqrt origin must not exceed t_start");
    }
    if (require_continuity && i > 0) {
      const auto left = segments_[i - 1].raw(seg.t_start);
      const auto right = seg.raw(seg.t_start);
      if (std::abs(left - right) > 1e-12 * (1.0 + std::abs(left))) {
        throw ConfigError(where + ": driver is discontinuous at t=" + std::to_string(seg.t_start));
      }
    }
    expected_start = seg.t_end;
  }
  horizon_ = segments_.back().t_end;

  breakpoints_.push_back(0.0);
  for (const auto& seg : segments_) {
    if (seg.kind == SegmentKind::Tabulated) {
      for (std::size_t j = 1; j < seg.sample_times.size(); ++j) breakpoints_.push_back(seg.sample_times[j]);
    } else {
      breakpoints_.push_back(seg.t_end);
    }
  }
}

DrivingFunction DrivingFunction::constant(std::complex<double> value, double horizon) {
  return DrivingFunction({Segment::constant(0.0, horizon, value)});
}

DrivingFunction DrivingFunction::linear(std::complex<double> start_value,
                                        std::complex<double> slope, double horizon) {
  return DrivingFunction({Segment::linear(0.0, horizon, start_value, slope)});
}

DrivingFunction DrivingFunction::sqrt_scaled(std::complex<double> offset,
                                             std::complex<double> scale, double horizon) {
  return DrivingFunction({Segment::sqrt_scaled(0.0, horizon, offset, scale)});
}

DrivingFunction DrivingFunction::tabulated(std::vector<double> times,
                                           std::vector<std::complex<double>> values) {
  return DrivingFunction({Segment::tabulated(std::move(times), std::move(values))});
}

DrivingFunction DrivingFunction::angular_from(const DrivingFunction& theta) {
  if (theta.angular()) throw ConfigError("driver is already angular");
  if (!theta.is_real()) throw ConfigError("angle driver must be real-valued");
  return DrivingFunction(theta.segments_, true, theta.order_);
}

std::size_t DrivingFunction::segment_index(double t) const {
  // Right-continuous choice: the segment with t_start <= t < t_end; the last
  // segment is closed at the horizon.
  const auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const Segment& s) { return v < s.t_start; });
  std::size_t idx = it == segments_.begin() ? 0 : static_cast<std::size_t>(it - segments_.begin()) - 1;
  return std::min(idx, segments_.size() - 1);
}

std::complex<double> DrivingFunction::finish(std::complex<double> raw) const {
  if (!angular_) return raw;
  return std::polar(1.0, raw.real());
}

std::complex<double> DrivingFunction::operator()(double t) const {
  if (segments_.empty()) throw ConfigError("evaluating an empty driving function");
  if (!(t >= 0.0 && t <= horizon_)) {
    throw ConfigError("time " + std::to_string(t) + " outside driver horizon [0, " +
                      std::to_string(horizon_) + "]");
  }
  return finish(segments_[segment_index(t)].raw(t));
}

std::complex<double> DrivingFunction::on_piece(double t, double hint) const {
  if (!(t >= 0.0 && t <= horizon_)) {
    throw ConfigError("time " + std::to_string(t) + " outside driver horizon [0, " +
                      std::to_string(horizon_) + "]");
  }
  const Segment& seg = segments_[segment_index(std::clamp(hint, 0.0, horizon_))];
  return finish(seg.raw(std::clamp(t, seg.t_start, seg.t_end)));
}

std::vector<double> DrivingFunction::probe_times() const {
  std::vector<double> probes;
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    const double a = breakpoints_[i];
    const double b = breakpoints_[i + 1];
    probes.insert(probes.end(), {a, 0.25 * (3 * a + b), 0.5 * (a + b), 0.25 * (a + 3 * b), b});
  }
  return probes;
}

bool DrivingFunction::is_real(double tol) const {
  if (angular_) {
    for (double t : probe_times()) {
      if (std::abs((*this)(t).imag()) > tol) return false;
    }
    return true;
  }
  for (const auto& seg : segments_) {
    if (std::abs(seg.a.imag()) > tol || std::abs(seg.b.imag()) > tol) return false;
    for (const auto& v : seg.sample_values) {
      if (std::abs(v.imag()) > tol) return false;
    }
  }
  return true;
}

bool DrivingFunction::is_unimodular(double tol) const {
  for (double t : probe_times()) {
    if (std::abs(std::abs((*this)(t)) - 1.0) > tol) return false;
  }
  return true;
}

double DrivingFunction::max_modulus() const {
  double m = 0.0;
  for (double t : probe_times()) m = std::max(m, std::abs((*this)(t)));
  return m;
}

DrivingFunction DrivingFunction::with_extra_breakpoints(const std::vector<double>& extra) const {
  std::vector<double> cuts;
  for (double c : extra) {
    if (c > 0.0 && c < horizon_) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Segment> out;
  for (const auto& seg : segments_) {
    Segment rest = seg;
    for (double c : cuts) {
      if (!(c > rest.t_start && c < rest.t_end)) continue;
      Segment left = rest;
      left.t_end = c;
      rest.t_start = c;
      if (seg.kind == SegmentKind::Tabulated) {
        const std::complex<double> vc = seg.raw(c);
        left.sample_times.clear();
        left.sample_values.clear();
        std::vector<double> rt;
        std::vector<std::complex<double>> rv;
        for (std::size_t j = 0; j < rest.sample_times.size(); ++j) {
          const double tj = rest.sample_times[j];
          if (tj < c) {
            left.sample_times.push_back(tj);
            left.sample_values.push_back(rest.sample_values[j]);
          } else if (tj > c) {
            rt.push_back(tj);
            rv.push_back(rest.sample_values[j]);
          }
        }
        left.sample_times.push_back(c);
        left.sample_values.push_back(vc);
        rt.insert(rt.begin(), c);
        rv.insert(rv.begin(), vc);
        rest.sample_times = std::move(rt);
        rest.sample_values = std::move(rv);
      }
      out.push_back(std::move(left));
    }
    out.push_back(std::move(rest));
  }
  return DrivingFunction(std::move(out), angular_, order_, false);
}

}  // namespace loewner
