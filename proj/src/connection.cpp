#include "cym/connection.hpp"

#include <cmath>

namespace cym {

LabConnection::LabConnection(AlgebraPtr L, LieForm gamma) : L_(std::move(L)), gamma_(std::move(gamma)) {
  require(gamma_.degree() == 1 && gamma_.kind() == ValueKind::Endomorphism, "Γ must be an End(g)-valued 1-form");
  require(gamma_.dim() == L_->dim(), "Γ has the wrong algebra dimension");
}

LabConnection LabConnection::adjoint(AlgebraPtr L, LieForm omega) {
  require(omega.degree() == 1 && omega.kind() == ValueKind::Algebra, "ω must be an algebra-valued 1-form");
  LabConnection c(L, ad_form(L, omega));
  c.omega_ = std::move(omega);
  return c;
}

LabConnection LabConnection::flat(AlgebraPtr L, const ChartPtr& chart) {
  const int d = L->dim();
  return adjoint(std::move(L), zero_form(chart, 1, ValueKind::Algebra, d));
}

LieForm cov_ext_deriv(const LabConnection& nabla, const LieForm& alpha) {
  require(alpha.kind() == ValueKind::Algebra, "d^∇ acts on algebra-valued forms");
  return exterior_derivative(alpha) + graded_product(Pairing::end_action(alpha.dim()), nabla.gamma(), alpha);
}

LieForm curvature_of_potential(const AlgebraPtr& L, const LieForm& omega) {
  return exterior_derivative(omega) + 0.5 * graded_product(Pairing::bracket(L), omega, omega);
}

Curvature curvature(const LabConnection& nabla) {
  const int d = nabla.algebra()->dim();
  require(nabla.chart()->n() >= 2, "curvature needs a chart of dimension >= 2");
  const LieForm& G = nabla.gamma();
  Curvature out{exterior_derivative(G) + graded_product(Pairing::end_compose(d), G, G), std::nullopt};
  if (nabla.omega()) {
    out.F_omega = curvature_of_potential(nabla.algebra(), *nabla.omega());
    const Point x = nabla.chart()->center();
    const Eigen::MatrixXd R = out.R(x);
    const Eigen::MatrixXd adF = ad_form(nabla.algebra(), *out.F_omega)(x);
    const double err = (R - adF).lpNorm<Eigen::Infinity>() / std::max(1.0, R.lpNorm<Eigen::Infinity>());
    const double tol = (G.has_analytic_d() ? 1e-9 : 1e-5);
    if (err > tol)
      throw ConsistencyError("curvature: dΓ + Γ∧Γ disagrees with ad of dω + ½[ω∧ω] (" + std::to_string(err) + ")");
  }
  return out;
}

CompatibilityReport check_compatibility(const LabConnection& nabla, const LieForm& zeta,
                                        const std::vector<Point>& points) {
  require(zeta.degree() == 2 && zeta.kind() == ValueKind::Algebra, "ζ must be an algebra-valued 2-form");
  const auto& L = *nabla.algebra();
  const int d = L.dim(), n = nabla.chart()->n();
  const LieForm R = curvature(nabla).R;
  CompatibilityReport rep;
  rep.points = points.size();
  for (const Point& x : points) {
    const Eigen::MatrixXd G = nabla.gamma()(x);
    double der = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Map<const Eigen::MatrixXd> Gi(G.col(i).data(), d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const Eigen::VectorXd ea = Eigen::VectorXd::Unit(d, a), eb = Eigen::VectorXd::Unit(d, b);
          // ∇ acts on the constant basis sections through Γ alone.
          const Eigen::VectorXd r =
              Gi * bracket(L, ea, eb) - bracket(L, Gi * ea, eb) - bracket(L, ea, Gi * eb);
          der = std::max(der, r.norm());
        }
    }
    const Eigen::MatrixXd Rx = R(x), Zx = zeta(x);
    double cur = 0.0;
    for (int c = 0; c < Rx.cols(); ++c) {
      const Eigen::Map<const Eigen::MatrixXd> Rc(Rx.col(c).data(), d, d);
      const Eigen::MatrixXd diff = Rc - adjoint_algebra(L, Zx.col(c));
      cur = std::max(cur, diff.colwise().norm().maxCoeff());
    }
    rep.derivation_per_point.push_back(der);
    rep.curvature_per_point.push_back(cur);
    rep.derivation_residual = std::max(rep.derivation_residual, der);
    rep.curvature_residual = std::max(rep.curvature_residual, cur);
  }
  return rep;
}

Redefinition field_redefine(const LabConnection& nabla, const LieForm& zeta, const LieForm& A, const LieForm& lambda) {
  require(lambda.degree() == 1 && lambda.kind() == ValueKind::Algebra, "λ must be an algebra-valued 1-form");
  const AlgebraPtr& L = nabla.algebra();
  const LieForm zeta_new = zeta - cov_ext_deriv(nabla, lambda) + 0.5 * graded_product(Pairing::bracket(L), lambda, lambda);
  const LieForm A_new = A + lambda;
  if (nabla.omega()) return {LabConnection::adjoint(L, *nabla.omega() - lambda), zeta_new, A_new};
  return {LabConnection(L, nabla.gamma() - ad_form(L, lambda)), zeta_new, A_new};
}

}  // namespace cym
