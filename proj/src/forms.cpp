#include "cym/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace cym {

int value_rows(ValueKind kind, int dim) {
  switch (kind) {
    case ValueKind::Algebra:
      return dim;
    case ValueKind::Endomorphism:
      return dim * dim;
    case ValueKind::Scalar:
      return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- Chart

Chart::Chart(int n, std::vector<std::pair<double, double>> box, Metric metric, int orientation,
             std::string metric_kind, FdSettings fd)
    : n_(n),
      box_(std::move(box)),
      metric_(std::move(metric)),
      orientation_(orientation),
      kind_(std::move(metric_kind)),
      fd_(fd),
      diag_(std::make_shared<FdDiagnostics>()) {
  require(n_ >= 1, "chart dimension must be positive");
  require(static_cast<int>(box_.size()) == n_, "chart box must have one interval per coordinate");
  for (const auto& [lo, hi] : box_) require(lo < hi, "chart box must be nonempty");
  require(orientation_ == 1 || orientation_ == -1, "orientation must be +1 or -1");
}

namespace {
FdSettings default_fd(const std::vector<std::pair<double, double>>& box) {
  FdSettings fd;
  double s = 0.0;
  for (const auto& [lo, hi] : box) s = std::max(s, 0.5 * (hi - lo));
  fd.h = 1e-5 * std::max(1.0, s);
  return fd;
}
}  // namespace

std::shared_ptr<Chart> Chart::euclidean(int n, std::vector<std::pair<double, double>> box, int orientation) {
  const FdSettings fd = default_fd(box);
  return std::make_shared<Chart>(
      n, std::move(box), [n](const Point&) { return Eigen::MatrixXd::Identity(n, n); }, orientation, "euclidean", fd);
}

std::shared_ptr<Chart> Chart::round_sphere(int n, std::vector<std::pair<double, double>> box, int orientation) {
  const FdSettings fd = default_fd(box);
  return std::make_shared<Chart>(
      n, std::move(box),
      [n](const Point& x) {
        const double f = 2.0 / (1.0 + x.squaredNorm());
        return Eigen::MatrixXd((f * f) * Eigen::MatrixXd::Identity(n, n));
      },
      orientation, "round-sphere-stereographic", fd);
}

std::shared_ptr<Chart> Chart::minkowski(int n, std::vector<std::pair<double, double>> box, int orientation) {
  const FdSettings fd = default_fd(box);
  return std::make_shared<Chart>(
      n, std::move(box),
      [n](const Point&) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
        g(0, 0) = -1.0;
        return g;
      },
      orientation, "minkowski", fd);
}

bool Chart::contains(const Point& x) const {
  for (int i = 0; i < n_; ++i)
    if (x[i] < box_[static_cast<std::size_t>(i)].first || x[i] > box_[static_cast<std::size_t>(i)].second) return false;
  return true;
}

Point Chart::center() const {
  Point c(n_);
  for (int i = 0; i < n_; ++i) c[i] = 0.5 * (box_[static_cast<std::size_t>(i)].first + box_[static_cast<std::size_t>(i)].second);
  return c;
}

double Chart::scale() const {
  double s = 0.0;
  for (const auto& [lo, hi] : box_) s = std::max(s, 0.5 * (hi - lo));
  return s;
}

// ---------------------------------------------------------------- LieForm

LieForm::LieForm(ChartPtr chart, int degree, ValueKind kind, int dim, Evaluator eval)
    : chart_(std::move(chart)), k_(degree), kind_(kind), dim_(dim), eval_(std::move(eval)) {
  require(chart_ != nullptr, "form needs a chart");
  require(k_ >= 0, "form degree must be nonnegative");
  fd_ = chart_->fd();
}

Eigen::MatrixXd LieForm::operator()(const Point& x) const {
  require(x.size() == n(), "form evaluated at a point of the wrong dimension");
  return eval_(x);
}

Eigen::VectorXd LieForm::component(const Point& x, std::vector<int> idx) const {
  require(static_cast<int>(idx.size()) == k_, "component index has wrong length");
  const int s = sort_with_sign(idx);
  if (s == 0) return Eigen::VectorXd::Zero(rows());
  const int pos = MultiIndexSet::get(n(), k_).index_of(idx);
  require(pos >= 0, "component index out of range");
  return s * (*this)(x).col(pos);
}

LieForm LieForm::with_analytic_d(DFactory factory) const {
  LieForm out = *this;
  out.d_ = std::make_shared<Derivative>();
  out.d_->factory = std::move(factory);
  return out;
}

const LieForm& LieForm::analytic_d() const {
  require(has_analytic_d(), "form has no analytic derivative");
  std::call_once(d_->once, [this] { d_->value = std::make_shared<const LieForm>(d_->factory()); });
  return *d_->value;
}

LieForm LieForm::without_analytic_d() const {
  LieForm out = *this;
  out.d_.reset();
  return out;
}

LieForm LieForm::with_fd(const FdSettings& fd) const {
  LieForm out = *this;
  out.fd_ = fd;
  return out;
}

LieForm LieForm::with_fd_depth(int depth) const {
  LieForm out = *this;
  out.fd_depth_ = depth;
  return out;
}

// ---------------------------------------------------------------- pairings

Pairing Pairing::bracket(const AlgebraPtr& L) {
  return {ValueKind::Algebra, ValueKind::Algebra, ValueKind::Algebra, L->dim(),
          [L](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return cym::bracket(*L, a, b); }};
}

Pairing Pairing::kappa(const AlgebraPtr& L) {
  return {ValueKind::Algebra, ValueKind::Algebra, ValueKind::Scalar, L->dim(),
          [L](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
            Eigen::VectorXd r(1);
            r[0] = a.dot(L->kappa() * b);
            return r;
          }};
}

Pairing Pairing::end_action(int dim) {
  return {ValueKind::Endomorphism, ValueKind::Algebra, ValueKind::Algebra, dim,
          [dim](const Eigen::VectorXd& T, const Eigen::VectorXd& v) {
            return Eigen::VectorXd(Eigen::Map<const Eigen::MatrixXd>(T.data(), dim, dim) * v);
          }};
}

Pairing Pairing::end_compose(int dim) {
  return {ValueKind::Endomorphism, ValueKind::Endomorphism, ValueKind::Endomorphism, dim,
          [dim](const Eigen::VectorXd& S, const Eigen::VectorXd& T) {
            Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(S.data(), dim, dim) *
                                Eigen::Map<const Eigen::MatrixXd>(T.data(), dim, dim);
            return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(P.data(), dim * dim));
          }};
}

// ---------------------------------------------------------------- constructors and linear combinators

LieForm zero_form(const ChartPtr& chart, int degree, ValueKind kind, int dim) {
  const int r = value_rows(kind, dim), c = binomial(chart->n(), degree);
  LieForm f(chart, degree, kind, dim, [r, c](const Point&) { return Eigen::MatrixXd::Zero(r, c); });
  ChartPtr ch = chart;
  if (degree < chart->n()) return f.with_analytic_d([ch, degree, kind, dim] { return zero_form(ch, degree + 1, kind, dim); });
  return f;
}

LieForm constant_form(const ChartPtr& chart, int degree, ValueKind kind, int dim, const Eigen::MatrixXd& values) {
  require(values.rows() == value_rows(kind, dim) && values.cols() == binomial(chart->n(), degree),
          "constant form values have the wrong shape");
  LieForm f(chart, degree, kind, dim, [values](const Point&) { return values; });
  ChartPtr ch = chart;
  if (degree < chart->n()) return f.with_analytic_d([ch, degree, kind, dim] { return zero_form(ch, degree + 1, kind, dim); });
  return f;
}

namespace {

void require_compatible(const LieForm& a, const LieForm& b) {
  require(a.chart() == b.chart() || a.n() == b.n(), "forms live on different charts");
  require(a.degree() == b.degree(), "sum of forms of different degree");
  require(a.kind() == b.kind() && a.dim() == b.dim(), "sum of forms with different value types");
}

LieForm combine(double sa, const LieForm& a, double sb, const LieForm& b) {
  require_compatible(a, b);
  LieForm f(a.chart(), a.degree(), a.kind(), a.dim(),
            [sa, a, sb, b](const Point& x) { return Eigen::MatrixXd(sa * a(x) + sb * b(x)); });
  f = f.with_fd(a.fd()).with_fd_depth(std::max(a.fd_depth(), b.fd_depth()));
  if (a.has_analytic_d() && b.has_analytic_d() && a.degree() < a.n())
    f = f.with_analytic_d([sa, a, sb, b] { return combine(sa, a.analytic_d(), sb, b.analytic_d()); });
  return f;
}

}  // namespace

LieForm operator+(const LieForm& a, const LieForm& b) { return combine(1.0, a, 1.0, b); }
LieForm operator-(const LieForm& a, const LieForm& b) { return combine(1.0, a, -1.0, b); }

LieForm operator*(double s, const LieForm& a) {
  LieForm f(a.chart(), a.degree(), a.kind(), a.dim(), [s, a](const Point& x) { return Eigen::MatrixXd(s * a(x)); });
  f = f.with_fd(a.fd()).with_fd_depth(a.fd_depth());
  if (a.has_analytic_d() && a.degree() < a.n()) f = f.with_analytic_d([s, a] { return s * a.analytic_d(); });
  return f;
}

LieForm linear_map(const LieForm& f, ValueKind out_kind, const Eigen::MatrixXd& M) {
  require(M.cols() == f.rows() && M.rows() == value_rows(out_kind, f.dim()), "linear map has the wrong shape");
  LieForm g(f.chart(), f.degree(), out_kind, f.dim(), [f, M](const Point& x) { return Eigen::MatrixXd(M * f(x)); });
  g = g.with_fd(f.fd()).with_fd_depth(f.fd_depth());
  if (f.has_analytic_d() && f.degree() < f.n())
    g = g.with_analytic_d([f, out_kind, M] { return linear_map(f.analytic_d(), out_kind, M); });
  return g;
}

LieForm pointwise_linear(const LieForm& f, ValueKind out_kind, std::function<Eigen::MatrixXd(const Point&)> M) {
  const int rows = value_rows(out_kind, f.dim());
  LieForm g(f.chart(), f.degree(), out_kind, f.dim(), [f, M, rows](const Point& x) {
    Eigen::MatrixXd m = M(x);
    require(m.rows() == rows && m.cols() == f.rows(), "pointwise linear map has the wrong shape");
    return Eigen::MatrixXd(m * f(x));
  });
  return g.with_fd(f.fd()).with_fd_depth(f.fd_depth());
}

LieForm ad_form(const AlgebraPtr& L, const LieForm& f) {
  require(f.kind() == ValueKind::Algebra, "ad applies to algebra-valued forms");
  const int d = L->dim();
  Eigen::MatrixXd M(d * d, d);
  for (int a = 0; a < d; ++a) {
    Eigen::MatrixXd ad = adjoint_algebra(*L, Eigen::VectorXd::Unit(d, a));
    M.col(a) = Eigen::Map<Eigen::VectorXd>(ad.data(), d * d);
  }
  return linear_map(f, ValueKind::Endomorphism, M);
}

// ---------------------------------------------------------------- evaluation

Eigen::VectorXd eval_form(const LieForm& f, const Point& x, const std::vector<Vector>& vectors) {
  const int k = f.degree(), n = f.n();
  require(static_cast<int>(vectors.size()) == k, "eval_form: wrong number of tangent vectors");
  for (const auto& v : vectors) require(v.size() == n, "eval_form: tangent vector of wrong length");
  const Eigen::MatrixXd C = f(x);
  if (k == 0) return C.col(0);
  const auto& sets = MultiIndexSet::get(n, k);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(f.rows());
  Eigen::MatrixXd sub(k, k);
  for (int I = 0; I < sets.size(); ++I) {
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = vectors[static_cast<std::size_t>(c)][sets[I][static_cast<std::size_t>(r)]];
    const double det = sub.determinant();
    if (det != 0.0) out += det * C.col(I);
  }
  return out;
}

const std::vector<std::vector<Shuffle>>& shuffle_table(int n, int k, int m) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<std::vector<Shuffle>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, k, m});
  if (it != cache.end()) return it->second;
  std::vector<std::vector<Shuffle>> table;
  if (k + m <= n) {
    const auto& KS = MultiIndexSet::get(n, k + m);
    const auto& IS = MultiIndexSet::get(n, k);
    const auto& JS = MultiIndexSet::get(n, m);
    const auto& pos = MultiIndexSet::get(k + m, k);
    for (int K = 0; K < KS.size(); ++K) {
      std::vector<Shuffle> row;
      for (int p = 0; p < pos.size(); ++p) {
        std::vector<int> I, J;
        std::vector<bool> inI(static_cast<std::size_t>(k + m), false);
        for (int q : pos[p]) inI[static_cast<std::size_t>(q)] = true;
        std::vector<int> perm;
        for (int q = 0; q < k + m; ++q)
          if (inI[static_cast<std::size_t>(q)]) I.push_back(KS[K][static_cast<std::size_t>(q)]);
        for (int q = 0; q < k + m; ++q)
          if (!inI[static_cast<std::size_t>(q)]) J.push_back(KS[K][static_cast<std::size_t>(q)]);
        perm = I;
        perm.insert(perm.end(), J.begin(), J.end());
        const int sign = sort_with_sign(perm);
        row.push_back({IS.index_of(I), JS.index_of(J), sign});
      }
      table.push_back(std::move(row));
    }
  }
  return cache.emplace(std::make_tuple(n, k, m), std::move(table)).first->second;
}

LieForm graded_product(const Pairing& P, const LieForm& A, const LieForm& B) {
  require(A.kind() == P.left && B.kind() == P.right, "graded product: pairing does not match value kinds");
  require(A.n() == B.n(), "graded product: forms on different charts");
  const int n = A.n(), k = A.degree(), m = B.degree();
  if (k + m > n) return zero_form(A.chart(), k + m, P.out, P.dim);
  const int out_rows = value_rows(P.out, P.dim);
  const auto& table = shuffle_table(n, k, m);
  LieForm f(A.chart(), k + m, P.out, P.dim, [P, A, B, out_rows, &table](const Point& x) {
    const Eigen::MatrixXd a = A(x), b = B(x);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(out_rows, static_cast<Eigen::Index>(table.size()));
    for (std::size_t K = 0; K < table.size(); ++K)
      for (const Shuffle& s : table[K]) out.col(static_cast<Eigen::Index>(K)) += s.sign * P.apply(a.col(s.left), b.col(s.right));
    return out;
  });
  f = f.with_fd(A.fd()).with_fd_depth(std::max(A.fd_depth(), B.fd_depth()));
  if (A.has_analytic_d() && B.has_analytic_d() && k + m < n) {
    // d(A ∧ B) = dA ∧ B + (-1)^k A ∧ dB
    f = f.with_analytic_d([P, A, B, k] {
      const double s = (k % 2 == 0) ? 1.0 : -1.0;
      return graded_product(P, A.analytic_d(), B) + s * graded_product(P, A, B.analytic_d());
    });
  }
  return f;
}

// ---------------------------------------------------------------- exterior derivative

namespace {

/// Partial derivatives of all components along each coordinate axis.
std::vector<Eigen::MatrixXd> fd_partials(const LieForm& f, const Point& x) {
  const int n = f.n();
  const FdSettings& fd = f.fd();
  const double h = f.fd_depth() == 0 ? fd.h : fd.h2;
  const Chart& chart = *f.chart();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double lo = chart.box()[static_cast<std::size_t>(i)].first;
    const double hi = chart.box()[static_cast<std::size_t>(i)].second;
    const int reach = fd.order == 4 ? 2 : 1;
    auto at = [&](double s) {
      Point y = x;
      y[i] += s;
      return f(y);
    };
    const bool fwd_ok = x[i] + reach * h <= hi;
    const bool bwd_ok = x[i] - reach * h >= lo;
    if (fwd_ok && bwd_ok) {
      if (fd.order == 4)
        out.push_back((-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h));
      else
        out.push_back((at(h) - at(-h)) / (2.0 * h));
    } else {
      chart.diagnostics().reduced_stencils.fetch_add(1, std::memory_order_relaxed);
      const double s = fwd_ok ? h : -h;
      // second-order one-sided stencil pointing into the box
      out.push_back((-3.0 * at(0.0) + 4.0 * at(s) - at(2 * s)) / (2.0 * s));
    }
  }
  return out;
}

}  // namespace

LieForm exterior_derivative(const LieForm& f) {
  require(f.degree() < f.n(), "exterior derivative of a top form");
  if (f.has_analytic_d()) return f.analytic_d();
  const int n = f.n(), k = f.degree();
  const auto& table = shuffle_table(n, 1, k);
  LieForm d(f.chart(), k + 1, f.kind(), f.dim(), [f, &table](const Point& x) {
    const std::vector<Eigen::MatrixXd> D = fd_partials(f, x);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(f.rows(), static_cast<Eigen::Index>(table.size()));
    // (df)_K = Σ over shuffles (i | J) of K: sign ∂_i f_J
    for (std::size_t K = 0; K < table.size(); ++K)
      for (const Shuffle& s : table[K]) out.col(static_cast<Eigen::Index>(K)) += s.sign * D[static_cast<std::size_t>(s.left)].col(s.right);
    return out;
  });
  return d.with_fd(f.fd()).with_fd_depth(f.fd_depth() + 1);
}

// ---------------------------------------------------------------- Hodge star

LieForm hodge_star(const LieForm& f) {
  const int n = f.n(), k = f.degree();
  const ChartPtr chart = f.chart();
  const auto& src = MultiIndexSet::get(n, k);
  const auto& dst = MultiIndexSet::get(n, n - k);
  // complement of each destination set and the sign of (complement, J)
  std::vector<int> comp_index(static_cast<std::size_t>(dst.size()));
  std::vector<int> comp_sign(static_cast<std::size_t>(dst.size()));
  for (int J = 0; J < dst.size(); ++J) {
    std::vector<int> C;
    for (int i = 0; i < n; ++i)
      if (std::find(dst[J].begin(), dst[J].end(), i) == dst[J].end()) C.push_back(i);
    std::vector<int> perm = C;
    perm.insert(perm.end(), dst[J].begin(), dst[J].end());
    comp_index[static_cast<std::size_t>(J)] = src.index_of(C);
    comp_sign[static_cast<std::size_t>(J)] = sort_with_sign(perm);
  }
  LieForm s(chart, n - k, f.kind(), f.dim(), [f, chart, n, k, comp_index, comp_sign](const Point& x) {
    const Eigen::MatrixXd g = chart->metric(x);
    const double det = g.determinant();
    if (!(std::abs(det) > 1e-14)) throw SingularMetricError("metric is singular at the evaluation point");
    const Eigen::MatrixXd gi = g.inverse();
    const auto& S = MultiIndexSet::get(n, k);
    const Eigen::MatrixXd a = f(x);
    // raise all indices: α^I = Σ_L det(g^{-1}[I, L]) α_L
    Eigen::MatrixXd raised = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    Eigen::MatrixXd sub(k, k);
    for (int I = 0; I < S.size(); ++I)
      for (int L = 0; L < S.size(); ++L) {
        double m = 1.0;
        if (k > 0) {
          for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) sub(r, c) = gi(S[I][static_cast<std::size_t>(r)], S[L][static_cast<std::size_t>(c)]);
          m = sub.determinant();
        }
        if (m != 0.0) raised.col(I) += m * a.col(L);
      }
    const double vol = chart->orientation() * std::sqrt(std::abs(det));
    Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(comp_index.size()));
    for (std::size_t J = 0; J < comp_index.size(); ++J)
      out.col(static_cast<Eigen::Index>(J)) = (vol * comp_sign[J]) * raised.col(comp_index[J]);
    return out;
  });
  return s.with_fd(f.fd()).with_fd_depth(f.fd_depth());
}

LieForm kappa_wedge_top(const AlgebraPtr& L, const LieForm& F, const LieForm& G) {
  require(F.n() == 4, "kappa_wedge_top requires a 4-dimensional chart");
  require(F.degree() == 2 && G.degree() == 2, "kappa_wedge_top takes two 2-forms");
  return graded_product(Pairing::kappa(L), F, G);
}

}  // namespace cym
