#include "cym/harness/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cym::harness {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("scenario field '" + where + "': " + what);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing");
  return *it;
}

double as_double(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::vector<double> as_doubles(const json& j, const std::string& where, int expected) {
  if (!j.is_array()) fail(where, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected)
    fail(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_double(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
}

ValueKind kind_from_string(const std::string& s, const std::string& where) {
  if (s == "algebra") return ValueKind::Algebra;
  if (s == "endomorphism") return ValueKind::Endomorphism;
  if (s == "scalar") return ValueKind::Scalar;
  fail(where, "value must be 'algebra', 'endomorphism' or 'scalar'");
}

const char* kind_to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Algebra:
      return "algebra";
    case ValueKind::Endomorphism:
      return "endomorphism";
    case ValueKind::Scalar:
      return "scalar";
  }
  return "algebra";
}

}  // namespace

// ------------------------------------------------------------- forms

json form_to_json(const PolyForm& p) {
  json terms = json::array();
  const auto& sets = MultiIndexSet::get(p.n, p.degree);
  for (int c = 0; c < sets.size(); ++c)
    for (const Monomial& m : p.components[static_cast<std::size_t>(c)]) {
      json t;
      json idx = json::array();
      for (int i : sets[c]) idx.push_back(i + 1);
      t["index"] = idx;
      if (p.kind == ValueKind::Endomorphism) {
        json rows = json::array();
        for (int r = 0; r < p.dim; ++r) {
          json row = json::array();
          for (int s = 0; s < p.dim; ++s) row.push_back(m.coeffs[s * p.dim + r]);
          rows.push_back(row);
        }
        t["matrix"] = rows;
      } else {
        t["coeffs"] = std::vector<double>(m.coeffs.data(), m.coeffs.data() + m.coeffs.size());
      }
      t["exponents"] = m.exponents;
      if (m.radial_power != 0.0) t["radial_power"] = m.radial_power;
      terms.push_back(t);
    }
  return {{"degree", p.degree}, {"value", kind_to_string(p.kind)}, {"terms", terms}};
}

PolyForm form_from_json(const json& j, int n, int dim, const std::string& where, int expected_degree) {
  only_keys(j, {"degree", "value", "terms"}, where);
  const int degree = as_int(field(j, "degree", where), where + ".degree");
  if (degree < 0 || degree > n) fail(where + ".degree", "must lie in [0, " + std::to_string(n) + "]");
  if (expected_degree >= 0 && degree != expected_degree)
    fail(where + ".degree", "expected " + std::to_string(expected_degree));
  ValueKind kind = ValueKind::Algebra;
  if (j.contains("value")) {
    if (!j["value"].is_string()) fail(where + ".value", "expected a string");
    kind = kind_from_string(j["value"].get<std::string>(), where + ".value");
  }
  PolyForm p(n, degree, kind, dim);
  const json& terms = field(j, "terms", where);
  if (!terms.is_array()) fail(where + ".terms", "expected an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string w = where + ".terms[" + std::to_string(t) + "]";
    const json& term = terms[t];
    only_keys(term, {"index", "coeffs", "matrix", "exponents", "radial_power"}, w);
    std::vector<int> index;
    if (degree > 0 || term.contains("index")) {
      const json& ij = field(term, "index", w);
      if (!ij.is_array() || static_cast<int>(ij.size()) != degree)
        fail(w + ".index", "expected " + std::to_string(degree) + " coordinate indices");
      for (std::size_t i = 0; i < ij.size(); ++i) {
        const int v = as_int(ij[i], w + ".index");
        if (v < 1 || v > n) fail(w + ".index", "coordinate indices are 1-based and at most " + std::to_string(n));
        index.push_back(v - 1);
      }
      std::vector<int> sorted = index;
      if (sort_with_sign(sorted) == 0) fail(w + ".index", "repeated coordinate index");
    }
    Monomial m;
    if (kind == ValueKind::Endomorphism) {
      if (term.contains("coeffs")) fail(w + ".coeffs", "endomorphism-valued terms take 'matrix'");
      const json& mj = field(term, "matrix", w);
      if (!mj.is_array() || static_cast<int>(mj.size()) != dim) fail(w + ".matrix", "expected " + std::to_string(dim) + " rows");
      m.coeffs = Eigen::VectorXd(dim * dim);
      for (int r = 0; r < dim; ++r) {
        const auto row = as_doubles(mj[static_cast<std::size_t>(r)], w + ".matrix[" + std::to_string(r) + "]", dim);
        for (int s = 0; s < dim; ++s) m.coeffs[s * dim + r] = row[static_cast<std::size_t>(s)];
      }
    } else {
      if (term.contains("matrix")) fail(w + ".matrix", "only endomorphism-valued forms take 'matrix'");
      const auto c = as_doubles(field(term, "coeffs", w), w + ".coeffs", value_rows(kind, dim));
      m.coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
    }
    m.exponents.assign(static_cast<std::size_t>(n), 0);
    if (term.contains("exponents")) {
      const json& ej = term["exponents"];
      if (!ej.is_array() || static_cast<int>(ej.size()) != n)
        fail(w + ".exponents", "expected " + std::to_string(n) + " entries");
      for (int i = 0; i < n; ++i) {
        const int e = as_int(ej[static_cast<std::size_t>(i)], w + ".exponents");
        if (e < 0) fail(w + ".exponents", "exponents must be nonnegative");
        m.exponents[static_cast<std::size_t>(i)] = e;
      }
    }
    if (term.contains("radial_power")) m.radial_power = as_double(term["radial_power"], w + ".radial_power");
    p.add(index, std::move(m));
  }
  return p;
}

// ------------------------------------------------------------- algebra

json algebra_to_json(const LieAlgebra& L) {
  const int d = L.dim();
  json sc = json::array();
  for (int a = 0; a < d; ++a) {
    json A = json::array();
    for (int b = 0; b < d; ++b) {
      json B = json::array();
      for (int k = 0; k < d; ++k) B.push_back(L.c(a, b, k));
      A.push_back(B);
    }
    sc.push_back(A);
  }
  json reps = json::array();
  for (const CMatrix& R : L.rep()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < R.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index s = 0; s < R.cols(); ++s) row.push_back({R(r, s).real(), R(r, s).imag()});
      rows.push_back(row);
    }
    reps.push_back(rows);
  }
  json kappa = json::array();
  for (int a = 0; a < d; ++a) {
    json row = json::array();
    for (int b = 0; b < d; ++b) row.push_back(L.kappa()(a, b));
    kappa.push_back(row);
  }
  std::vector<bool> center = L.center_mask();
  return {{"name", L.name()},     {"dim", d},          {"labels", L.labels()},
          {"structure_constants", sc}, {"rep_matrices", reps}, {"kappa", kappa},
          {"center_mask", center}};
}

AlgebraPtr algebra_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name != "su2" && name != "u1" && name != "u1+su2") fail(where, "unknown built-in algebra '" + name + "'");
    return LieAlgebra::builtin(name);
  }
  only_keys(j, {"name", "dim", "labels", "structure_constants", "rep_matrices", "kappa", "center_mask"}, where);
  const int d = as_int(field(j, "dim", where), where + ".dim");
  if (d < 1) fail(where + ".dim", "must be positive");
  std::vector<double> c(static_cast<std::size_t>(d * d * d));
  const json& sc = field(j, "structure_constants", where);
  if (!sc.is_array() || static_cast<int>(sc.size()) != d) fail(where + ".structure_constants", "expected dim x dim x dim");
  for (int a = 0; a < d; ++a) {
    const json& A = sc[static_cast<std::size_t>(a)];
    if (!A.is_array() || static_cast<int>(A.size()) != d) fail(where + ".structure_constants", "expected dim x dim x dim");
    for (int b = 0; b < d; ++b) {
      const auto v = as_doubles(A[static_cast<std::size_t>(b)],
                                where + ".structure_constants[" + std::to_string(a) + "][" + std::to_string(b) + "]", d);
      for (int k = 0; k < d; ++k) c[static_cast<std::size_t>((a * d + b) * d + k)] = v[static_cast<std::size_t>(k)];
    }
  }
  const json& reps = field(j, "rep_matrices", where);
  if (!reps.is_array() || static_cast<int>(reps.size()) != d) fail(where + ".rep_matrices", "expected dim matrices");
  std::vector<CMatrix> rep;
  int m = -1;
  for (int a = 0; a < d; ++a) {
    const std::string w = where + ".rep_matrices[" + std::to_string(a) + "]";
    const json& R = reps[static_cast<std::size_t>(a)];
    if (!R.is_array() || R.empty()) fail(w, "expected a square matrix of [re, im] pairs");
    if (m < 0) m = static_cast<int>(R.size());
    if (static_cast<int>(R.size()) != m) fail(w, "all representation matrices must have the same size");
    CMatrix M(m, m);
    for (int r = 0; r < m; ++r) {
      const json& row = R[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != m) fail(w, "expected a square matrix");
      for (int s = 0; s < m; ++s) {
        const auto z = as_doubles(row[static_cast<std::size_t>(s)], w + "[" + std::to_string(r) + "][" + std::to_string(s) + "]", 2);
        M(r, s) = {z[0], z[1]};
      }
    }
    rep.push_back(M);
  }
  Eigen::MatrixXd kappa = Eigen::MatrixXd::Identity(d, d);
  if (j.contains("kappa")) {
    const json& kj = j["kappa"];
    if (!kj.is_array() || static_cast<int>(kj.size()) != d) fail(where + ".kappa", "expected dim x dim");
    for (int a = 0; a < d; ++a) {
      const auto row = as_doubles(kj[static_cast<std::size_t>(a)], where + ".kappa[" + std::to_string(a) + "]", d);
      for (int b = 0; b < d; ++b) kappa(a, b) = row[static_cast<std::size_t>(b)];
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || static_cast<int>(j["labels"].size()) != d) fail(where + ".labels", "expected dim strings");
    for (const auto& s : j["labels"]) {
      if (!s.is_string()) fail(where + ".labels", "expected strings");
      labels.push_back(s.get<std::string>());
    }
  } else {
    for (int a = 0; a < d; ++a) labels.push_back("e" + std::to_string(a + 1));
  }
  std::vector<bool> center(static_cast<std::size_t>(d), false);
  if (j.contains("center_mask")) {
    const json& cm = j["center_mask"];
    if (!cm.is_array() || static_cast<int>(cm.size()) != d) fail(where + ".center_mask", "expected dim booleans");
    for (int a = 0; a < d; ++a) {
      if (!cm[static_cast<std::size_t>(a)].is_boolean()) fail(where + ".center_mask", "expected booleans");
      center[static_cast<std::size_t>(a)] = cm[static_cast<std::size_t>(a)].get<bool>();
    }
  }
  std::string name = "custom";
  if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
  return std::make_shared<const LieAlgebra>(name, labels, c, rep, kappa, center);
}

// ------------------------------------------------------------- scenario

LieForm Scenario::structural_omega() const {
  return omega ? *omega : zero_form(chart, 1, ValueKind::Algebra, L->dim());
}

GaugeScenario Scenario::gauge(double gate_tol) const {
  return GaugeScenario(lgb(), nabla, zeta, A, sample_points(*chart, plan), gate_tol);
}

namespace {

ChartPtr chart_from_json(const json& j, const LoadOptions& opts, FdSettings& fd_out) {
  only_keys(j, {"dim", "box", "metric", "orientation", "fd"}, "chart");
  const int n = as_int(field(j, "dim", "chart"), "chart.dim");
  if (n < 1 || n > 12) fail("chart.dim", "must lie in [1, 12]");
  std::vector<std::pair<double, double>> box;
  const json& bj = field(j, "box", "chart");
  if (bj.is_array() && bj.size() == 2 && bj[0].is_number()) {
    const auto b = as_doubles(bj, "chart.box", 2);
    box.assign(static_cast<std::size_t>(n), {b[0], b[1]});
  } else {
    if (!bj.is_array() || static_cast<int>(bj.size()) != n) fail("chart.box", "expected [lo, hi] or one [lo, hi] per axis");
    for (int i = 0; i < n; ++i) {
      const auto b = as_doubles(bj[static_cast<std::size_t>(i)], "chart.box[" + std::to_string(i) + "]", 2);
      box.emplace_back(b[0], b[1]);
    }
  }
  for (std::size_t i = 0; i < box.size(); ++i)
    if (!(box[i].first < box[i].second)) fail("chart.box[" + std::to_string(i) + "]", "lo must be below hi");
  int orientation = 1;
  if (j.contains("orientation")) {
    orientation = as_int(j["orientation"], "chart.orientation");
    if (orientation != 1 && orientation != -1) fail("chart.orientation", "must be +1 or -1");
  }
  std::string metric = "euclidean";
  if (j.contains("metric")) {
    if (!j["metric"].is_string()) fail("chart.metric", "expected a string");
    metric = j["metric"].get<std::string>();
  }
  std::shared_ptr<Chart> chart;
  if (metric == "euclidean")
    chart = Chart::euclidean(n, box, orientation);
  else if (metric == "round-s4" || metric == "round-sphere")
    chart = Chart::round_sphere(n, box, orientation);
  else if (metric == "minkowski")
    chart = Chart::minkowski(n, box, orientation);
  else
    fail("chart.metric", "must be 'euclidean', 'round-s4' or 'minkowski'");
  FdSettings fd = chart->fd();
  if (j.contains("fd")) {
    const json& f = j["fd"];
    only_keys(f, {"h", "h2", "order"}, "chart.fd");
    if (f.contains("h")) fd.h = as_double(f["h"], "chart.fd.h");
    if (f.contains("h2")) fd.h2 = as_double(f["h2"], "chart.fd.h2");
    if (f.contains("order")) {
      fd.order = as_int(f["order"], "chart.fd.order");
      if (fd.order != 2 && fd.order != 4) fail("chart.fd.order", "must be 2 or 4");
    }
  }
  if (opts.h) fd.h = *opts.h;
  if (opts.h2) fd.h2 = *opts.h2;
  if (!(fd.h > 0.0) || !(fd.h2 > 0.0)) fail("chart.fd", "steps must be positive");
  chart->set_fd(fd);
  fd_out = fd;
  return chart;
}

LieForm form_or_zero(const json& j, const ChartPtr& chart, int dim, const std::string& where, int degree,
                     ValueKind kind = ValueKind::Algebra) {
  if (j.is_string()) {
    if (j.get<std::string>() != "zero") fail(where, "expected a form or \"zero\"");
    return zero_form(chart, degree, kind, dim);
  }
  const PolyForm p = form_from_json(j, chart->n(), dim, where, degree);
  if (p.kind != kind) fail(where + ".value", std::string("expected ") + kind_to_string(kind) + "-valued form");
  return to_lie_form(chart, p);
}

SectionPtr section_from_json(const json& j, const ChartPtr& chart, const AlgebraPtr& L, const std::string& where) {
  only_keys(j, {"exp"}, where);
  return exp_section(L, form_or_zero(field(j, "exp", where), chart, L->dim(), where + ".exp", 0));
}

}  // namespace

Scenario load_scenario(const json& j, const LoadOptions& opts) {
  only_keys(j,
            {"name", "algebra", "chart", "lgb", "connection", "zeta", "gauge", "principal", "forms", "sections",
             "automorphisms", "plan", "tolerances", "quadrature", "expected_charge"},
            "");
  Scenario s{.name = "unnamed",
             .source = j,
             .L = nullptr,
             .chart = nullptr,
             .omega = std::nullopt,
             .nabla = LabConnection::flat(LieAlgebra::u1(), Chart::euclidean(1, {{0.0, 1.0}})),
             .zeta = zero_form(Chart::euclidean(1, {{0.0, 1.0}}), 0, ValueKind::Algebra, 1),
             .A = zero_form(Chart::euclidean(1, {{0.0, 1.0}}), 0, ValueKind::Algebra, 1),
             .forms = {},
             .sections = {},
             .automorphisms = {},
             .plan = {},
             .tolerances = {},
             .quadrature = {},
             .expected_charge = std::nullopt};
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "expected a string");
    s.name = j["name"].get<std::string>();
  }
  s.L = algebra_from_json(field(j, "algebra", ""), "algebra");
  const int d = s.L->dim();
  FdSettings fd;
  s.chart = chart_from_json(field(j, "chart", ""), opts, fd);
  const ChartPtr& chart = s.chart;

  if (j.contains("forms")) {
    const json& fj = j["forms"];
    if (!fj.is_object()) fail("forms", "expected an object of named forms");
    for (auto it = fj.begin(); it != fj.end(); ++it)
      s.forms.emplace(it.key(), to_lie_form(chart, form_from_json(it.value(), chart->n(), d, "forms." + it.key())));
  }

  if (j.contains("lgb")) {
    only_keys(j["lgb"], {"omega"}, "lgb");
    if (j["lgb"].contains("omega")) s.omega = form_or_zero(j["lgb"]["omega"], chart, d, "lgb.omega", 1);
  }
  if (j.contains("connection")) {
    const json& cj = j["connection"];
    only_keys(cj, {"omega", "gamma"}, "connection");
    if (cj.contains("omega") && cj.contains("gamma")) fail("connection", "give either omega or gamma, not both");
    if (cj.contains("omega")) {
      LieForm w = form_or_zero(cj["omega"], chart, d, "connection.omega", 1);
      if (!s.omega) s.omega = w;
      s.nabla = LabConnection::adjoint(s.L, w);
    } else if (cj.contains("gamma")) {
      s.nabla = LabConnection(s.L, form_or_zero(cj["gamma"], chart, d, "connection.gamma", 1, ValueKind::Endomorphism));
    } else {
      fail("connection", "expected omega or gamma");
    }
  } else {
    s.nabla = LabConnection::adjoint(s.L, s.structural_omega());
  }

  const json& zj = field(j, "zeta", "");
  if (zj.is_string()) {
    const std::string z = zj.get<std::string>();
    const std::string central = "curvature-plus-central:";
    if (z == "zero") {
      s.zeta = zero_form(chart, 2, ValueKind::Algebra, d);
    } else if (z == "curvature-of-omega") {
      if (!s.nabla.omega()) fail("zeta", "curvature-of-omega needs ∇ generated by an ω");
      s.zeta = curvature_of_potential(s.L, *s.nabla.omega());
    } else if (z.rfind(central, 0) == 0) {
      if (!s.nabla.omega()) fail("zeta", "curvature-plus-central needs ∇ generated by an ω");
      const std::string ref = z.substr(central.size());
      auto it = s.forms.find(ref);
      if (it == s.forms.end()) fail("zeta", "unknown form '" + ref + "'");
      if (it->second.degree() != 2 || it->second.kind() != ValueKind::Algebra)
        fail("forms." + ref, "expected an algebra-valued 2-form");
      s.zeta = curvature_of_potential(s.L, *s.nabla.omega()) + it->second;
    } else {
      fail("zeta", "expected a form, \"zero\", \"curvature-of-omega\" or \"curvature-plus-central:<form>\"");
    }
  } else {
    s.zeta = form_or_zero(zj, chart, d, "zeta", 2);
  }
  if (opts.zero_zeta) s.zeta = zero_form(chart, 2, ValueKind::Algebra, d);

  if (j.contains("gauge") && j.contains("principal")) fail("principal", "give the gauge field in one of gauge or principal");
  const std::string akey = j.contains("principal") ? "principal" : "gauge";
  if (j.contains(akey)) {
    only_keys(j[akey], {"A"}, akey);
    s.A = form_or_zero(field(j[akey], "A", akey), chart, d, akey + ".A", 1);
  } else {
    s.A = zero_form(chart, 1, ValueKind::Algebra, d);
  }

  for (const char* key : {"sections", "automorphisms"}) {
    if (!j.contains(key)) continue;
    const json& sj = j[key];
    if (!sj.is_object()) fail(key, "expected an object of named sections");
    auto& target = std::string(key) == "sections" ? s.sections : s.automorphisms;
    for (auto it = sj.begin(); it != sj.end(); ++it)
      target.emplace(it.key(), section_from_json(it.value(), chart, s.L, std::string(key) + "." + it.key()));
  }

  if (j.contains("plan")) {
    const json& pj = j["plan"];
    only_keys(pj, {"mode", "points", "seed", "tangent_probes"}, "plan");
    if (pj.contains("mode")) {
      if (!pj["mode"].is_string()) fail("plan.mode", "expected a string");
      s.plan.mode = pj["mode"].get<std::string>();
      if (s.plan.mode != "random" && s.plan.mode != "grid") fail("plan.mode", "must be 'random' or 'grid'");
    }
    if (pj.contains("points")) s.plan.points = as_int(pj["points"], "plan.points");
    if (pj.contains("seed")) {
      if (!pj["seed"].is_number_integer() || pj["seed"].get<long long>() < 0)
        fail("plan.seed", "expected a nonnegative integer");
      s.plan.seed = pj["seed"].get<std::uint64_t>();
    }
    if (pj.contains("tangent_probes")) s.plan.tangent_probes = as_int(pj["tangent_probes"], "plan.tangent_probes");
  }
  if (opts.points) s.plan.points = *opts.points;
  if (opts.seed) s.plan.seed = *opts.seed;
  if (s.plan.points < 1) fail("plan.points", "must be positive");
  if (s.plan.tangent_probes < 1) fail("plan.tangent_probes", "must be positive");

  if (j.contains("tolerances")) {
    const json& tj = j["tolerances"];
    if (!tj.is_object()) fail("tolerances", "expected an object of check name -> tolerance");
    for (auto it = tj.begin(); it != tj.end(); ++it)
      s.tolerances[it.key()] = as_double(it.value(), "tolerances." + it.key());
  }
  if (j.contains("quadrature")) {
    const json& qj = j["quadrature"];
    only_keys(qj, {"radius", "order"}, "quadrature");
    if (qj.contains("radius")) s.quadrature.radius = as_double(qj["radius"], "quadrature.radius");
    if (qj.contains("order")) s.quadrature.order = as_int(qj["order"], "quadrature.order");
    if (!(s.quadrature.radius > 0.0) || s.quadrature.order < 2) fail("quadrature", "radius > 0 and order >= 2 required");
  }
  if (j.contains("expected_charge")) s.expected_charge = as_double(j["expected_charge"], "expected_charge");

  // The canonical source records the effective settings so reports can be reproduced from it.
  s.source["plan"] = {{"mode", s.plan.mode}, {"points", s.plan.points}, {"seed", s.plan.seed},
                      {"tangent_probes", s.plan.tangent_probes}};
  s.source["chart"]["fd"] = {{"h", fd.h}, {"h2", fd.h2}, {"order", fd.order}};
  if (opts.zero_zeta) s.source["zeta"] = "zero";
  return s;
}

Scenario load_scenario_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("scenario file '" + path + "': " + e.what());
  }
  return load_scenario(j, opts);
}

Scenario resolve_scenario(const std::string& name_or_path, const LoadOptions& opts) {
  for (const auto& b : builtin_names())
    if (b == name_or_path) return builtin_scenario(b, opts);
  return load_scenario_file(name_or_path, opts);
}

Scenario builtin_scenario(const std::string& name, const LoadOptions& opts) {
  return load_scenario(builtin_scenario_json(name), opts);
}

}  // namespace cym::harness
