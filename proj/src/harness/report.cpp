#include "cym/harness/suites.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cym::harness {

namespace {
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

json report_json(const Report& r) {
  json suites = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name},
              {"anchor", c.anchor},
              {"residual", number_or_null(c.residual)},
              {"tolerance", c.tolerance},
              {"pass", c.pass}};
    if (c.lower_bound) e["bound"] = "lower";
    if (!c.note.empty()) e["note"] = c.note;
    suites.push_back(e);
  }
  return {{"scenario", r.scenario}, {"suites", suites}, {"env", r.env}, {"pass", r.pass}};
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << "check,sample,residual\n";
  for (const auto& c : r.checks)
    for (std::size_t i = 0; i < c.samples.size(); ++i) out << c.name << ',' << i << ',' << format(c.samples[i]) << '\n';
  return out.str();
}

}  // namespace cym::harness
