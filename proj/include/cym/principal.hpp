#pragma once

#include "cym/lgb.hpp"

namespace cym {

/// Trivial principal bundle U x G with structural bundle `lgb` and gauge field
/// A_local in the gauge s(x) = (x, e).
struct TrivPrincipal {
  TrivLgb lgb;
  LieForm A_local;

  TrivPrincipal(TrivLgb lgb, LieForm A_local);
  const AlgebraPtr& algebra() const { return lgb.L; }
  int n() const { return lgb.chart->n(); }
  int dim() const { return lgb.L->dim(); }
};

/// Tangent vector at (x, h): base part X and fibre part V in body coordinates h^{-1} v.
struct PTangent {
  Vector X;
  Eigen::VectorXd V;
  Eigen::VectorXd stacked() const;
  static PTangent from_stacked(const Eigen::VectorXd& z, int n);
};

/// A_{(x,h)}(X, V) = V + Ad_{h^{-1}} A_local(X) + (Ad_{h^{-1}} - id) ω(X).
Eigen::VectorXd connection_one_form(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t);
PTangent horizontal_projection(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t);
PTangent vertical_projection(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t);
/// Horizontal lift of a base vector.
PTangent horizontal_lift(const TrivPrincipal& P, const Point& x, const GroupElement& h, const Vector& X);

/// r̂_{g*}(X, V) = (X, Ad_{g^{-1}} V - (Ad_{g^{-1}} - id) ω_x(X)).
PTangent modified_pushforward(const TrivPrincipal& P, const Point& x, const GroupElement& g, const PTangent& t);
/// The section formula D r_σ(t) - (π^!Δσ)(t)~ evaluated by differentiating along a curve.
PTangent modified_pushforward_via_section(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                          const SectionPtr& sigma, const PTangent& t);
/// Largest disagreement among the closed form and the section formula for two
/// sections through the same g; throws ConsistencyError above `tol`.
double section_independence_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                     const SectionPtr& s1, const SectionPtr& s2, const PTangent& t,
                                     double tol = 1e-8);

/// ‖DΦ((X,V),(X,W)) - [D r_σ(X,V) + (μ_G(Y - Dσ(X)))~]‖ with σ(x) = g.
double action_differential_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                    const SectionPtr& sigma, const PTangent& t, const Eigen::VectorXd& W);

double equivariance_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const GroupElement& g,
                             const PTangent& t);
double kernel_invariance_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const GroupElement& g,
                                  const Vector& X);
double projection_commutation_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                       const GroupElement& g, const PTangent& t);
int pushforward_rank(const TrivPrincipal& P, const Point& x, const GroupElement& g);
/// ‖A([X̂, ν̃]) - (dν(W) + Γ(W)ν)‖ from coordinate vector-field brackets.
double mixed_bracket_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const Vector& W,
                              const LieForm& nu);

/// Generalized field strength at one point of the total space. Coordinate
/// derivatives are computed once; both evaluation routes reuse them.
class FieldStrengthAt {
 public:
  FieldStrengthAt(const TrivPrincipal& P, const LieForm& zeta, const Point& x, const GroupElement& h);
  /// d^{π*∇}A + ½[A ∧ A] + π^!ζ.
  Eigen::VectorXd direct(const PTangent& t1, const PTangent& t2) const;
  /// d^{π*∇}A(π_h ·, π_h ·) + π^!ζ.
  Eigen::VectorXd structure(const PTangent& t1, const PTangent& t2) const;

 private:
  Eigen::VectorXd contract(const std::vector<Eigen::VectorXd>& M, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) const;
  int n_, d_, N_;
  Eigen::MatrixXd A0_;                 // A on coordinate vectors at the point
  std::vector<Eigen::VectorXd> full_;  // per ordered pair (α, β), α < β
  std::vector<Eigen::VectorXd> dA_;
};

/// σ^H_{(x,h)} = h^{-1} τ(x) h.
GroupElement conjugation_map(const SectionPtr& tau, const Point& x, const GroupElement& h);

struct GaugeTransformCheck {
  double A_residual;
  double F_residual;
};
/// Pullback through H(x,h) = (x, τ(x)h) against Ad_{(σ^H)^{-1}} A + (π*Δ)σ^H and Ad_{(σ^H)^{-1}} F.
GaugeTransformCheck gauge_transform_total(const TrivPrincipal& P, const LieForm& zeta, const SectionPtr& tau,
                                          const Point& x, const GroupElement& h, const PTangent& t1,
                                          const PTangent& t2);

}  // namespace cym
