#pragma once

#include "cym/algebra.hpp"
#include "cym/common.hpp"

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cym {

enum class ValueKind { Algebra, Endomorphism, Scalar };

/// Rows of the value vector for a kind: dim, dim*dim (column-major), or 1.
int value_rows(ValueKind kind, int dim);

struct FdSettings {
  double h = 1e-5;   // first-level central differences
  double h2 = 1e-4;  // differences of quantities that are themselves differenced
  int order = 2;     // 2 or 4
};

/// Counters shared by every form on a chart; safe for concurrent updates.
struct FdDiagnostics {
  std::atomic<long> reduced_stencils{0};
  std::atomic<long> skipped_singular{0};
};

class Chart {
 public:
  using Metric = std::function<Eigen::MatrixXd(const Point&)>;

  Chart(int n, std::vector<std::pair<double, double>> box, Metric metric, int orientation, std::string metric_kind,
        FdSettings fd = {});

  static std::shared_ptr<Chart> euclidean(int n, std::vector<std::pair<double, double>> box, int orientation = 1);
  /// Pullback of the unit round metric through stereographic projection, 4 / (1 + |x|^2)^2 δ.
  static std::shared_ptr<Chart> round_sphere(int n, std::vector<std::pair<double, double>> box, int orientation = 1);
  /// Signature (-,+,...,+).
  static std::shared_ptr<Chart> minkowski(int n, std::vector<std::pair<double, double>> box, int orientation = 1);

  int n() const { return n_; }
  const std::vector<std::pair<double, double>>& box() const { return box_; }
  Eigen::MatrixXd metric(const Point& x) const { return metric_(x); }
  int orientation() const { return orientation_; }
  const std::string& metric_kind() const { return kind_; }
  const FdSettings& fd() const { return fd_; }
  void set_fd(const FdSettings& fd) { fd_ = fd; }
  FdDiagnostics& diagnostics() const { return *diag_; }
  bool contains(const Point& x) const;
  Point center() const;
  double scale() const;  // largest box half-width

 private:
  int n_;
  std::vector<std::pair<double, double>> box_;
  Metric metric_;
  int orientation_;
  std::string kind_;
  FdSettings fd_;
  std::shared_ptr<FdDiagnostics> diag_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Differential k-form on a chart with values in g, End(g) or R. Components are
/// stored per sorted multi-index i1 < ... < ik; the evaluator returns a
/// value_rows x C(n,k) matrix at a point.
class LieForm {
 public:
  using Evaluator = std::function<Eigen::MatrixXd(const Point&)>;
  using DFactory = std::function<LieForm()>;

  LieForm(ChartPtr chart, int degree, ValueKind kind, int dim, Evaluator eval);

  const ChartPtr& chart() const { return chart_; }
  int n() const { return chart_->n(); }
  int degree() const { return k_; }
  ValueKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int rows() const { return value_rows(kind_, dim_); }
  int components() const { return binomial(n(), k_); }

  Eigen::MatrixXd operator()(const Point& x) const;
  /// Value on an arbitrary index list, extended antisymmetrically (zero on repeats).
  Eigen::VectorXd component(const Point& x, std::vector<int> idx) const;

  /// Attach an exact exterior derivative, built lazily on first use.
  LieForm with_analytic_d(DFactory factory) const;
  bool has_analytic_d() const { return static_cast<bool>(d_ && d_->factory); }
  const LieForm& analytic_d() const;
  LieForm without_analytic_d() const;

  const FdSettings& fd() const { return fd_; }
  LieForm with_fd(const FdSettings& fd) const;
  /// Number of finite-difference levels already inside the evaluator.
  int fd_depth() const { return fd_depth_; }
  LieForm with_fd_depth(int depth) const;

 private:
  struct Derivative {
    DFactory factory;
    std::once_flag once;
    std::shared_ptr<const LieForm> value;
  };
  ChartPtr chart_;
  int k_;
  ValueKind kind_;
  int dim_;
  Evaluator eval_;
  std::shared_ptr<Derivative> d_;
  FdSettings fd_;
  int fd_depth_ = 0;
};

/// Bilinear map on values used by the graded product.
struct Pairing {
  ValueKind left, right, out;
  int dim;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> apply;

  static Pairing bracket(const AlgebraPtr& L);
  static Pairing kappa(const AlgebraPtr& L);
  /// End x g -> g, (T, v) -> T v.
  static Pairing end_action(int dim);
  /// End x End -> End, (S, T) -> S T.
  static Pairing end_compose(int dim);
};

LieForm zero_form(const ChartPtr& chart, int degree, ValueKind kind, int dim);
/// Constant components (value_rows x C(n,k)).
LieForm constant_form(const ChartPtr& chart, int degree, ValueKind kind, int dim, const Eigen::MatrixXd& values);

LieForm operator+(const LieForm& a, const LieForm& b);
LieForm operator-(const LieForm& a, const LieForm& b);
LieForm operator*(double s, const LieForm& a);
/// Apply a constant linear map M (out_rows x rows) to every component.
LieForm linear_map(const LieForm& f, ValueKind out_kind, const Eigen::MatrixXd& M);
/// Apply a point-dependent linear map to every component; no analytic derivative.
LieForm pointwise_linear(const LieForm& f, ValueKind out_kind, std::function<Eigen::MatrixXd(const Point&)> M);
/// ad applied to an algebra-valued form, giving an End(g)-valued form.
LieForm ad_form(const AlgebraPtr& L, const LieForm& f);

/// Antisymmetric multilinear evaluation on k tangent vectors.
Eigen::VectorXd eval_form(const LieForm& f, const Point& x, const std::vector<Vector>& vectors);
/// Graded extension of a bilinear pairing: components summed over shuffles with signs.
/// Returns the zero form when k + m exceeds the chart dimension.
LieForm graded_product(const Pairing& P, const LieForm& A, const LieForm& B);
/// Analytic derivative when attached, otherwise central differences of the components.
LieForm exterior_derivative(const LieForm& f);
LieForm hodge_star(const LieForm& f);
/// κ(F ∧ G) for two 2-forms on a 4-dimensional chart, as a scalar 4-form.
LieForm kappa_wedge_top(const AlgebraPtr& L, const LieForm& F, const LieForm& G);

/// Shuffles of a sorted (k+m)-set into a k-part and an m-part.
struct Shuffle {
  int left;   // index into MultiIndexSet(n, k)
  int right;  // index into MultiIndexSet(n, m)
  int sign;
};
/// For each sorted (k+m)-subset K, the shuffles of K.
const std::vector<std::vector<Shuffle>>& shuffle_table(int n, int k, int m);

}  // namespace cym
