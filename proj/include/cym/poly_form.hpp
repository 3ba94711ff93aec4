#pragma once

#include "cym/forms.hpp"

#include <vector>

namespace cym {

/// coeffs · x^exponents · (1 + |x|^2)^(-radial_power)
struct Monomial {
  Eigen::VectorXd coeffs;
  std::vector<int> exponents;
  double radial_power = 0.0;
};

/// Form whose components are finite sums of rational monomials. Closed under
/// differentiation, so its exterior derivative is exact.
struct PolyForm {
  int n = 0;
  int degree = 0;
  ValueKind kind = ValueKind::Algebra;
  int dim = 0;
  /// One term list per sorted multi-index, in MultiIndexSet order.
  std::vector<std::vector<Monomial>> components;

  PolyForm() = default;
  PolyForm(int n, int degree, ValueKind kind, int dim);

  int rows() const { return value_rows(kind, dim); }
  /// Append a term to the component with the given (sorted or unsorted) index list.
  void add(std::vector<int> index, Monomial m);
  Eigen::MatrixXd eval(const Point& x) const;
  /// ∂/∂x_i of every component.
  PolyForm partial(int i) const;
  PolyForm d() const;
  /// Merge terms with equal exponents and radial power; drop zero terms.
  void simplify();
  std::size_t term_count() const;
};

/// Wrap as a LieForm with the exact derivative attached.
LieForm to_lie_form(const ChartPtr& chart, const PolyForm& p);


/// Random polynomial form: every component gets all monomials of total degree
/// <= max_degree with coefficients uniform in [-scale, scale] / (1 + degree).
PolyForm random_poly_form(int n, int degree, ValueKind kind, int dim, Rng& rng, double scale, int max_degree);

}  // namespace cym
