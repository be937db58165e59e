#include <cmath>

#include "loewner/io.hpp"

namespace loewner::io {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const VerificationReport& r) {
  const WorstCase& w = r.worst_case;
  return json{{"check_name", r.check_name},
              {"max_residual", number(r.max_residual)},
              {"tolerance", number(r.tolerance)},
              {"pass", r.pass},
              {"sample_count", r.sample_count},
              {"worst_case",
               {{"s", number(w.s)},
                {"u", number(w.u)},
                {"t", number(w.t)},
                {"z", {number(w.z.real()), number(w.z.imag())}}}}};
}

json to_json(const ConstantsReport& r) {
  return json{{"samples", r.samples},
              {"seed", r.seed},
              {"self_map_max", number(r.self_map_max)},
              {"general_map_max", number(r.general_map_max)}};
}

json suite_to_json(const SuiteResult& result, std::uint64_t seed) {
  json reports = json::array();
  for (const auto& r : result.reports) reports.push_back(to_json(r));
  json out{{"seed", seed}, {"pass", result.pass()}, {"reports", reports}};
  if (result.constants_run) out["universal_constants"] = to_json(result.constants);
  return out;
}

}  // namespace loewner::io
