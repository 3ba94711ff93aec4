#include "cym/harness/scenario.hpp"

#include <array>

namespace cym::harness {

namespace {

// Quaternion basis 1, i, j, k as indices 0..3; product table e_a e_b = sign * e_c.
struct QProduct {
  int index;
  int sign;
};
QProduct qmul(int a, int b) {
  static const std::array<std::array<QProduct, 4>, 4> table{{
      {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}},
      {{{1, 1}, {0, -1}, {3, 1}, {2, -1}}},
      {{{2, 1}, {3, -1}, {0, -1}, {1, 1}}},
      {{{3, 1}, {2, 1}, {1, -1}, {0, -1}}},
  }};
  return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::vector<int> unit_exponent(int n, int i) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

json box_json(double lo, double hi) { return json::array({lo, hi}); }

json base(const std::string& name, const std::string& algebra, const std::string& metric, double lo, double hi) {
  return {{"name", name},
          {"algebra", algebra},
          {"chart", {{"dim", 4}, {"box", box_json(lo, hi)}, {"metric", metric}, {"orientation", 1}}},
          {"plan", {{"mode", "random"}, {"points", 64}, {"seed", 42}, {"tangent_probes", 4}}}};
}

/// Smooth 0-form for an exp section: constant, linear and quadratic terms.
json random_section(int dim, Rng& rng, double scale) {
  return {{"exp", form_to_json(random_poly_form(4, 0, ValueKind::Algebra, dim, rng, scale, 2))}};
}

/// Polynomial 1-form scaled down by (1 + |x|²)^p.
PolyForm decaying(PolyForm p, double power) {
  for (auto& comp : p.components)
    for (auto& m : comp) m.radial_power = power;
  return p;
}

void add_sections(json& j, int dim, Rng& rng, double scale) {
  j["sections"] = {{"s1", random_section(dim, rng, scale)}, {"s2", random_section(dim, rng, scale)}};
  j["automorphisms"] = {{"tau1", random_section(dim, rng, scale)}, {"tau2", random_section(dim, rng, scale)}};
}

}  // namespace

PolyForm bpst_omega() {
  const int n = 4;
  PolyForm w(n, 1, ValueKind::Algebra, 3);
  // coordinate x_{i+1} multiplies quaternion unit unit[i]: x1 -> i, x2 -> j, x3 -> k, x4 -> 1
  const int unit[4] = {1, 2, 3, 0};
  for (int a = 0; a < n; ++a)      // q̄ factor x_a
    for (int b = 0; b < n; ++b) {  // dq factor dx_b
      if (a == b) continue;
      const int ua = unit[a], ub = unit[b];
      const int conj = ua == 0 ? 1 : -1;
      const QProduct p = qmul(ua, ub);
      if (p.index == 0) continue;  // real part
      Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
      c[p.index - 1] = 2.0 * conj * p.sign;
      w.add({b}, {c, unit_exponent(n, a), 1.0});
    }
  w.simplify();
  return w;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"flat-su2", "abelian-u1", "preclassical-u1su2", "bpst", "random-curved"};
  return names;
}

json builtin_scenario_json(const std::string& name) {
  if (name == "flat-su2") {
    Rng rng(101);
    json j = base(name, "su2", "euclidean", -1.0, 1.0);
    j["lgb"] = {{"omega", "zero"}};
    j["zeta"] = "zero";
    j["gauge"] = {{"A", form_to_json(random_poly_form(4, 1, ValueKind::Algebra, 3, rng, 0.6, 2))}};
    add_sections(j, 3, rng, 0.8);
    return j;
  }
  if (name == "abelian-u1") {
    Rng rng(202);
    json j = base(name, "u1", "euclidean", -1.0, 1.0);
    j["lgb"] = {{"omega", "zero"}};
    j["zeta"] = "zero";
    j["gauge"] = {{"A", form_to_json(random_poly_form(4, 1, ValueKind::Algebra, 1, rng, 0.6, 2))}};
    add_sections(j, 1, rng, 0.8);
    return j;
  }
  if (name == "preclassical-u1su2") {
    Rng rng(303);
    json j = base(name, "u1+su2", "euclidean", -1.0, 1.0);
    j["lgb"] = {{"omega", "zero"}};
    // closed 2-form on the central u(1) direction
    PolyForm central(4, 2, ValueKind::Algebra, 4);
    const Eigen::VectorXd u = Eigen::VectorXd::Unit(4, 0);
    central.add({0, 1}, {u, {0, 0, 0, 0}, 0.0});
    central.add({2, 3}, {0.5 * u, {0, 0, 0, 0}, 0.0});
    central.add({0, 2}, {u, {1, 0, 0, 0}, 0.0});
    central.add({1, 3}, {u, {0, 0, 0, 1}, 0.0});
    j["forms"] = {{"central", form_to_json(central)}};
    j["zeta"] = "curvature-plus-central:central";
    j["gauge"] = {{"A", form_to_json(random_poly_form(4, 1, ValueKind::Algebra, 4, rng, 0.6, 2))}};
    add_sections(j, 4, rng, 0.8);
    return j;
  }
  if (name == "bpst") {
    Rng rng(404);
    json j = base(name, "su2", "round-s4", -2.0, 2.0);
    j["lgb"] = {{"omega", form_to_json(bpst_omega())}};
    j["zeta"] = "curvature-of-omega";
    j["gauge"] = {{"A", form_to_json(decaying(random_poly_form(4, 1, ValueKind::Algebra, 3, rng, 0.1, 1), 2.0))}};
    add_sections(j, 3, rng, 0.4);
    j["quadrature"] = {{"radius", 20.0}, {"order", 24}};
    j["expected_charge"] = 1.0;
    return j;
  }
  if (name == "random-curved") {
    Rng rng(505);
    json j = base(name, "su2", "euclidean", -1.0, 1.0);
    j["lgb"] = {{"omega", form_to_json(random_poly_form(4, 1, ValueKind::Algebra, 3, rng, 0.5, 2))}};
    j["zeta"] = "curvature-of-omega";
    j["gauge"] = {{"A", form_to_json(random_poly_form(4, 1, ValueKind::Algebra, 3, rng, 0.5, 2))}};
    add_sections(j, 3, rng, 0.8);
    return j;
  }
  throw InputError("unknown built-in scenario '" + name + "'");
}

}  // namespace cym::harness
