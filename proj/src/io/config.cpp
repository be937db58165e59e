#include <cmath>
#include <fstream>

#include "loewner/errors.hpp"
#include "loewner/io.hpp"

namespace loewner::io {

namespace {

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return get_number(obj.at(key), join(where, key));
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(get_number(x, key));
  return out;
}

Segment parse_segment(const json& seg, const std::string& where,
                      const std::filesystem::path& base_dir) {
  if (!seg.is_object()) throw ConfigError("'" + where + "' must be an object");
  const std::string kind = require(seg, "kind", where).get<std::string>();
  if (kind == "tabulated") {
    if (seg.contains("file")) {
      const DrivingFunction table =
          read_tabulated_driver(base_dir / seg.at("file").get<std::string>());
      return table.segments().front();
    }
    const auto times = number_list(require(seg, "times", where), join(where, "times"));
    const json& vals = require(seg, "values", where);
    if (!vals.is_array()) throw ConfigError("key '" + join(where, "values") + "' must be an array");
    std::vector<Complex> values;
    for (const auto& v : vals) values.push_back(parse_complex(v, join(where, "values")));
    return Segment::tabulated(times, values);
  }
  const double t0 = get_number(require(seg, "t_start", where), join(where, "t_start"));
  const double t1 = get_number(require(seg, "t_end", where), join(where, "t_end"));
  if (kind == "constant") {
    return Segment::constant(t0, t1, parse_complex(require(seg, "value", where), join(where, "value")));
  }
  if (kind == "linear") {
    return Segment::linear(t0, t1, parse_complex(require(seg, "value", where), join(where, "value")),
                           parse_complex(require(seg, "slope", where), join(where, "slope")));
  }
  if (kind == "sqrt") {
    const Complex offset = seg.contains("offset") ? parse_complex(seg.at("offset"), join(where, "offset")) : 0.0;
    return Segment::sqrt_scaled(t0, t1, offset,
                                parse_complex(require(seg, "scale", where), join(where, "scale")));
  }
  throw ConfigError("unknown segment kind '" + kind + "' in '" + where + "'");
}

}  // namespace

const json& require(const json& object, const std::string& key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw ConfigError("missing key '" + join(where, key) + "'");
  }
  return object.at(key);
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    json doc = json::parse(in, nullptr, true, true);
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    return doc;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

Complex parse_complex(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("key '" + key + "' must be a number or [re, im]");
}

DrivingFunction parse_driver(const json& v, const std::string& key, double horizon,
                             const std::filesystem::path& base_dir) {
  if (v.is_number() || v.is_array()) {
    if (!std::isfinite(horizon)) throw ConfigError("constant driver '" + key + "' needs a finite horizon");
    return DrivingFunction::constant(parse_complex(v, key), horizon);
  }
  if (!v.is_object()) throw ConfigError("key '" + key + "' must be a number, [re, im] or an object");
  const bool angular = v.value("angular", false);
  const double order = number_or(v, "order", std::numeric_limits<double>::infinity(), key);
  std::vector<Segment> segments;
  if (v.contains("file")) {
    segments = read_tabulated_driver(base_dir / v.at("file").get<std::string>()).segments();
  } else {
    const json& segs = require(v, "segments", key);
    if (!segs.is_array() || segs.empty()) {
      throw ConfigError("key '" + join(key, "segments") + "' must be a non-empty array");
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
      segments.push_back(parse_segment(segs[i], join(key, "segments[" + std::to_string(i) + "]"), base_dir));
    }
  }
  DrivingFunction d(segments, false, order);
  return angular ? DrivingFunction::angular_from(d) : d;
}

HerglotzField parse_field(const json& v, const std::filesystem::path& base_dir) {
  const std::string where = "field";
  if (!v.is_object()) throw ConfigError("key 'field' must be an object");
  const json& kind_value = require(v, "kind", where);
  if (!kind_value.is_string()) throw ConfigError("key 'field.kind' must be a string");
  const std::string kind = kind_value.get<std::string>();

  if (kind == "autonomous") {
    const double horizon = number_or(v, "horizon", kInfiniteHorizon, where);
    const Complex tau = v.contains("tau") ? parse_complex(v.at("tau"), "field.tau") : 0.0;
    std::vector<HerglotzAtom> atoms;
    if (v.contains("atoms")) {
      for (const auto& a : v.at("atoms")) {
        atoms.push_back({get_number(require(a, "weight", "field.atoms[]"), "field.atoms[].weight"),
                         parse_complex(require(a, "point", "field.atoms[]"), "field.atoms[].point")});
      }
    }
    HerglotzFunctionSpec p(atoms, number_or(v, "offset", atoms.empty() ? 1.0 : 0.0, where),
                           number_or(v, "imag_shift", 0.0, where));
    return HerglotzField::autonomous(tau, p, horizon);
  }

  const double horizon = number_or(v, "horizon", 1.0, where);
  if (kind == "radial") {
    return radial_field(parse_driver(require(v, "driver", where), "field.driver", horizon, base_dir));
  }
  if (kind == "chordal") {
    return chordal_field_halfplane(
        parse_driver(require(v, "driver", where), "field.driver", horizon, base_dir));
  }
  if (kind == "chordal_disk") {
    return transport_to_disk(chordal_field_halfplane(
        parse_driver(require(v, "driver", where), "field.driver", horizon, base_dir)));
  }
  if (kind == "general") {
    const DrivingFunction tau = parse_driver(require(v, "tau", where), "field.tau", horizon, base_dir);
    const double h = tau.horizon();
    std::vector<HerglotzFamily::DrivenAtom> atoms;
    if (v.contains("atoms")) {
      for (const auto& a : v.at("atoms")) {
        atoms.push_back({parse_driver(require(a, "weight", "field.atoms[]"), "field.atoms[].weight", h, base_dir),
                         parse_driver(require(a, "point", "field.atoms[]"), "field.atoms[].point", h, base_dir)});
      }
    }
    const DrivingFunction offset =
        v.contains("offset") ? parse_driver(v.at("offset"), "field.offset", h, base_dir)
                             : DrivingFunction::constant(atoms.empty() ? 1.0 : 0.0, h);
    const HerglotzFamily p =
        HerglotzFamily::driven(atoms, offset, number_or(v, "imag_shift", 0.0, where));
    return HerglotzField::general(tau, p, number_or(v, "order", std::numeric_limits<double>::infinity(), where));
  }
  throw ConfigError("unknown field kind '" + kind + "'");
}

SolverConfig parse_solver(const json& v) {
  SolverConfig cfg;
  if (v.is_null()) return cfg;
  if (!v.is_object()) throw ConfigError("key 'solver' must be an object");
  cfg.rel_tol = number_or(v, "rel_tol", cfg.rel_tol, "solver");
  cfg.abs_tol = number_or(v, "abs_tol", cfg.abs_tol, "solver");
  cfg.max_step = number_or(v, "max_step", cfg.max_step, "solver");
  cfg.boundary_margin = number_or(v, "boundary_margin", cfg.boundary_margin, "solver");
  cfg.singularity_margin = number_or(v, "singularity_margin", cfg.singularity_margin, "solver");
  cfg.max_steps = static_cast<long>(number_or(v, "max_steps", static_cast<double>(cfg.max_steps), "solver"));
  cfg.validate();
  return cfg;
}

std::vector<Complex> parse_points(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("key '" + key + "' must be an array");
  std::vector<Complex> out;
  for (const auto& p : v) out.push_back(parse_complex(p, key));
  return out;
}

std::vector<double> parse_times(const json& v, const std::string& key) {
  if (v.is_array()) {
    auto out = number_list(v, key);
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (!(out[i] > out[i - 1])) throw ConfigError("key '" + key + "' must be strictly increasing");
    }
    return out;
  }
  if (!v.is_object()) throw ConfigError("key '" + key + "' must be a list or {start, end, count}");
  const double a = get_number(require(v, "start", key), join(key, "start"));
  const double b = get_number(require(v, "end", key), join(key, "end"));
  const json& c = require(v, "count", key);
  if (!c.is_number_integer() || c.get<long>() < 0) throw ConfigError("key '" + key + ".count' must be a nonnegative integer");
  const long n = c.get<long>();
  std::vector<double> out;
  for (long k = 0; k < n; ++k) out.push_back(n == 1 ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
  return out;
}

}  // namespace loewner::io
