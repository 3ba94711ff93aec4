#include "cym/poly_form.hpp"

#include <cmath>
#include <map>

namespace cym {

PolyForm::PolyForm(int n_, int degree_, ValueKind kind_, int dim_)
    : n(n_), degree(degree_), kind(kind_), dim(dim_), components(static_cast<std::size_t>(binomial(n_, degree_))) {}

void PolyForm::add(std::vector<int> index, Monomial m) {
  require(static_cast<int>(index.size()) == degree, "PolyForm::add: index length != degree");
  require(static_cast<int>(m.exponents.size()) == n, "PolyForm::add: exponent vector length != n");
  require(m.coeffs.size() == rows(), "PolyForm::add: coefficient vector has the wrong length");
  const int s = sort_with_sign(index);
  require(s != 0, "PolyForm::add: repeated index");
  const int pos = MultiIndexSet::get(n, degree).index_of(index);
  require(pos >= 0, "PolyForm::add: index out of range");
  m.coeffs *= s;
  components[static_cast<std::size_t>(pos)].push_back(std::move(m));
}

Eigen::MatrixXd PolyForm::eval(const Point& x) const {
  const int r = rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(r, static_cast<Eigen::Index>(components.size()));
  const double radial = 1.0 + x.squaredNorm();
  for (std::size_t c = 0; c < components.size(); ++c)
    for (const Monomial& m : components[c]) {
      double v = 1.0;
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < m.exponents[static_cast<std::size_t>(i)]; ++e) v *= x[i];
      if (m.radial_power != 0.0) v *= std::pow(radial, -m.radial_power);
      if (v != 0.0) out.col(static_cast<Eigen::Index>(c)) += v * m.coeffs;
    }
  return out;
}

PolyForm PolyForm::partial(int i) const {
  PolyForm out(n, degree, kind, dim);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (const Monomial& m : components[c]) {
      const int e = m.exponents[static_cast<std::size_t>(i)];
      if (e > 0) {
        Monomial t = m;
        t.coeffs *= e;
        --t.exponents[static_cast<std::size_t>(i)];
        out.components[c].push_back(std::move(t));
      }
      if (m.radial_power != 0.0) {
        // ∂_i (1+|x|^2)^(-p) = -2p x_i (1+|x|^2)^(-p-1)
        Monomial t = m;
        t.coeffs *= -2.0 * m.radial_power;
        ++t.exponents[static_cast<std::size_t>(i)];
        t.radial_power += 1.0;
        out.components[c].push_back(std::move(t));
      }
    }
  out.simplify();
  return out;
}

PolyForm PolyForm::d() const {
  require(degree < n, "PolyForm::d of a top form");
  PolyForm out(n, degree + 1, kind, dim);
  const auto& table = shuffle_table(n, 1, degree);
  std::vector<PolyForm> partials;
  for (int i = 0; i < n; ++i) partials.push_back(partial(i));
  for (std::size_t K = 0; K < table.size(); ++K)
    for (const Shuffle& s : table[K])
      for (const Monomial& m : partials[static_cast<std::size_t>(s.left)].components[static_cast<std::size_t>(s.right)]) {
        Monomial t = m;
        t.coeffs *= s.sign;
        out.components[K].push_back(std::move(t));
      }
  out.simplify();
  return out;
}

void PolyForm::simplify() {
  for (auto& comp : components) {
    std::map<std::pair<std::vector<int>, double>, Eigen::VectorXd> merged;
    std::vector<std::pair<std::vector<int>, double>> order;
    for (const Monomial& m : comp) {
      auto key = std::make_pair(m.exponents, m.radial_power);
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, m.coeffs);
        order.push_back(key);
      } else {
        it->second += m.coeffs;
      }
    }
    std::vector<Monomial> out;
    for (const auto& key : order) {
      const Eigen::VectorXd& c = merged[key];
      if (c.lpNorm<Eigen::Infinity>() == 0.0) continue;
      out.push_back({c, key.first, key.second});
    }
    comp = std::move(out);
  }
}

std::size_t PolyForm::term_count() const {
  std::size_t t = 0;
  for (const auto& c : components) t += c.size();
  return t;
}

LieForm to_lie_form(const ChartPtr& chart, const PolyForm& p) {
  require(chart->n() == p.n, "polynomial form dimension does not match the chart");
  auto shared = std::make_shared<const PolyForm>(p);
  LieForm f(chart, p.degree, p.kind, p.dim, [shared](const Point& x) { return shared->eval(x); });
  if (p.degree < p.n) f = f.with_analytic_d([chart, shared] { return to_lie_form(chart, shared->d()); });
  return f;
}


namespace {
void exponent_vectors(int n, int max_degree, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int e : cur) used += e;
  for (int e = 0; used + e <= max_degree; ++e) {
    cur.push_back(e);
    exponent_vectors(n, max_degree, cur, out);
    cur.pop_back();
  }
}
}  // namespace

PolyForm random_poly_form(int n, int degree, ValueKind kind, int dim, Rng& rng, double scale, int max_degree) {
  PolyForm p(n, degree, kind, dim);
  std::vector<std::vector<int>> exps;
  std::vector<int> cur;
  exponent_vectors(n, max_degree, cur, exps);
  const auto& sets = MultiIndexSet::get(n, degree);
  for (int c = 0; c < sets.size(); ++c)
    for (const auto& e : exps) {
      int total = 0;
      for (int v : e) total += v;
      const double s = scale / (1.0 + total);
      p.components[static_cast<std::size_t>(c)].push_back({rng.uniform_vector(p.rows(), -s, s), e, 0.0});
    }
  return p;
}

}  // namespace cym
