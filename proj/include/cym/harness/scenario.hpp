#pragma once

#include "cym/gauge.hpp"
#include "cym/poly_form.hpp"
#include "cym/principal.hpp"
#include "cym/sampling.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace cym::harness {

using nlohmann::json;

/// A fully constructed scenario. `source` is the canonical JSON it was built from,
/// so dump -> load reproduces the same objects.
struct Scenario {
  std::string name;
  json source;
  AlgebraPtr L;
  ChartPtr chart;
  std::optional<LieForm> omega;  // structural ω; absent when ∇ is given through Γ
  LabConnection nabla;
  LieForm zeta;
  LieForm A;
  std::map<std::string, LieForm> forms;
  std::map<std::string, SectionPtr> sections;
  std::map<std::string, SectionPtr> automorphisms;
  SamplePlan plan;
  std::map<std::string, double> tolerances;
  QuadratureConfig quadrature;
  std::optional<double> expected_charge;

  /// ω, or the zero form when ∇ was given through Γ.
  LieForm structural_omega() const;
  TrivLgb lgb() const { return TrivLgb(chart, L, structural_omega()); }
  TrivPrincipal principal() const { return TrivPrincipal(lgb(), A); }
  /// Throws GateError when (∇, ζ) fails compatibility on the plan's points.
  GaugeScenario gauge(double gate_tol = 1e-6) const;
};

/// Overrides applied on top of the file contents.
struct LoadOptions {
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  std::optional<double> h;
  std::optional<double> h2;
  bool zero_zeta = false;
};

/// Schema errors throw InputError naming the offending field; algebra
/// invariant failures propagate the algebra's InputError.
Scenario load_scenario(const json& j, const LoadOptions& opts = {});
Scenario load_scenario_file(const std::string& path, const LoadOptions& opts = {});
/// Built-in name or a path to a JSON file.
Scenario resolve_scenario(const std::string& name_or_path, const LoadOptions& opts = {});

json form_to_json(const PolyForm& p);
PolyForm form_from_json(const json& j, int n, int dim, const std::string& where, int expected_degree = -1);
json algebra_to_json(const LieAlgebra& L);
AlgebraPtr algebra_from_json(const json& j, const std::string& where);

const std::vector<std::string>& builtin_names();
/// Canonical JSON of a built-in; throws InputError for an unknown name.
json builtin_scenario_json(const std::string& name);
Scenario builtin_scenario(const std::string& name, const LoadOptions& opts = {});

/// BPST potential Im(q̄ dq) / (1 + |x|²) on R⁴ with q = x4 + x1 i + x2 j + x3 k
/// and i, j, k ↦ 2e1, 2e2, 2e3.
PolyForm bpst_omega();

}  // namespace cym::harness
