#pragma once

#include "cym/harness/scenario.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cym::harness {

/// Outcome of one named check. For lower-bound checks (counterexamples) the
/// residual is the smallest sample and passing means it exceeds the tolerance.
struct CheckResult {
  std::string name;    // "<suite>/<check>"
  std::string anchor;  // identity the check verifies
  double residual = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
  bool pass = false;
  std::string note;
  std::vector<double> samples;  // per sample point, in plan order
};

struct Report {
  std::string scenario;
  std::vector<CheckResult> checks;
  json env;
  bool pass = true;
};

struct RunOptions {
  double tol_scale = 1.0;  // multiplies every upper-bound tolerance
};

/// Registered suite names, without "all".
const std::vector<std::string>& suite_names();
/// Identity description carried by every check of the suite.
const std::string& suite_anchor(const std::string& suite);

/// Runs one suite or "all"; unknown names throw InputError. Checks that do not
/// apply to the scenario (e.g. the topological suite without an expected charge) are omitted.
Report run_suite(const Scenario& s, const std::string& suite, const RunOptions& opts = {});

json report_json(const Report& r);
/// check,sample,residual rows.
std::string report_csv(const Report& r);

}  // namespace cym::harness
