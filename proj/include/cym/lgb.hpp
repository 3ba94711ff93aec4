#pragma once

#include "cym/connection.hpp"
#include "cym/forms.hpp"

#include <functional>
#include <memory>

namespace cym {

/// Trivial Lie group bundle U x G with the Ehresmann connection generated by ω.
struct TrivLgb {
  ChartPtr chart;
  AlgebraPtr L;
  LieForm omega;

  TrivLgb(ChartPtr chart, AlgebraPtr L, LieForm omega);
  LabConnection nabla() const { return LabConnection::adjoint(L, omega); }
};

/// Section x -> b(x) of the bundle.
class GSection {
 public:
  explicit GSection(AlgebraPtr L) : L_(std::move(L)) {}
  virtual ~GSection() = default;
  const AlgebraPtr& algebra() const { return L_; }
  virtual GroupElement value(const Point& x) const = 0;
  /// b^{-1} Db(X) in basis coordinates. The default differentiates the matrix
  /// entries along x + sX and throws VarietyError if the result leaves the algebra.
  virtual Eigen::VectorXd body_derivative(const Point& x, const Vector& X) const;
  /// Finite-difference levels inside body_derivative.
  virtual int fd_depth() const { return 1; }

 protected:
  AlgebraPtr L_;
};
using SectionPtr = std::shared_ptr<const GSection>;

SectionPtr identity_section(const AlgebraPtr& L);
SectionPtr constant_section(const AlgebraPtr& L, const GroupElement& g);
/// b = exp(φ) for an algebra-valued 0-form φ; derivative through the dexp series.
SectionPtr exp_section(const AlgebraPtr& L, const LieForm& phi);
/// Pointwise product x -> a(x) b(x).
SectionPtr product_section(const SectionPtr& a, const SectionPtr& b);
SectionPtr inverse_section(const SectionPtr& a);
SectionPtr generic_section(const AlgebraPtr& L, std::function<GroupElement(const Point&)> b);

/// η + (Ad_{g^{-1}} - id) ω_x(X).
Eigen::VectorXd mu_tot(const TrivLgb& L, const Point& x, const GroupElement& g, const Vector& X,
                       const Eigen::VectorXd& eta);

struct MultiplicativitySample {
  Point x;
  GroupElement g, q;
  Vector X;
  Eigen::VectorXd eta, theta;
};
/// ‖μ_{gq}(DΦ) - Ad_{q^{-1}} μ_g - μ_q‖. With `rho`, the form μ + Ad_{g^{-1}} ρ(X) is tested instead.
double multiplicativity_residual(const TrivLgb& L, const MultiplicativitySample& s, const LieForm* rho = nullptr);

/// Δσ(X) = b^{-1}Db(X) + (Ad_{b^{-1}} - id) ω(X).
LieForm darboux(const TrivLgb& L, const SectionPtr& sigma);
double darboux_leibniz_residual(const TrivLgb& L, const SectionPtr& s, const SectionPtr& t, const Point& x);
double darboux_inverse_residual(const TrivLgb& L, const SectionPtr& s, const Point& x);
/// ‖Ad_{b^{-1}} ∘ ∇ ∘ Ad_b - ∇ - ad_{Δb}‖ on the basis, ∇ = d + ad_ω.
double conjugated_connection_residual(const TrivLgb& L, const SectionPtr& b, const Point& x);

struct NablaFromDarboux {
  Eigen::VectorXd fd;        // d/dt Δ(e^{tν})(X) at t = 0
  Eigen::VectorXd analytic;  // dν(X) + [ω(X), ν]
  double residual;
};
/// Throws ConsistencyError when the two disagree by more than `tol`.
NablaFromDarboux nabla_from_darboux(const TrivLgb& L, const LieForm& nu, const Point& x, const Vector& X,
                                    double t_step = 1e-5, double tol = 1e-6);

/// Generalized Maurer-Cartan defect at (x, g) over all coordinate pairs of the
/// total-space chart (u, v) -> (x + u, g exp(v)).
double generalized_mc_residual(const TrivLgb& L, const LieForm& zeta, const Point& x, const GroupElement& g);

/// d^∇Δσ + ½[Δσ ∧ Δσ] + ζ - Ad_{σ^{-1}} ζ as a 2-form.
LieForm pullback_mc_form(const TrivLgb& L, const SectionPtr& sigma, const LieForm& zeta);
double pullback_mc_residual(const TrivLgb& L, const SectionPtr& sigma, const LieForm& zeta, const Point& x);

/// Ad_{σ(x)^{-1}} applied to every component of an algebra-valued form.
LieForm conjugate_by_inverse(const AlgebraPtr& L, const SectionPtr& sigma, const LieForm& f);

}  // namespace cym
