#pragma once

#include "cym/forms.hpp"

#include <optional>
#include <vector>

namespace cym {

/// Chart-local LAB connection ∇ = d + Γ with Γ an End(g)-valued 1-form,
/// optionally generated by an algebra-valued ω through Γ = ad_ω.
class LabConnection {
 public:
  LabConnection(AlgebraPtr L, LieForm gamma);
  static LabConnection adjoint(AlgebraPtr L, LieForm omega);
  static LabConnection flat(AlgebraPtr L, const ChartPtr& chart);

  const AlgebraPtr& algebra() const { return L_; }
  const LieForm& gamma() const { return gamma_; }
  const std::optional<LieForm>& omega() const { return omega_; }
  const ChartPtr& chart() const { return gamma_.chart(); }

 private:
  AlgebraPtr L_;
  LieForm gamma_;
  std::optional<LieForm> omega_;
};

/// d^∇α = dα + Γ ∧ α.
LieForm cov_ext_deriv(const LabConnection& nabla, const LieForm& alpha);

struct Curvature {
  LieForm R;                      // dΓ + Γ ∧ Γ, End(g)-valued
  std::optional<LieForm> F_omega;  // dω + ½[ω ∧ ω] when Γ = ad_ω
};
/// Coefficient-formula curvature. When Γ = ad_ω, R is compared against ad_{F_ω}
/// at the chart centre and ConsistencyError is thrown above 1e-9.
Curvature curvature(const LabConnection& nabla);

/// dω + ½[ω ∧ ω].
LieForm curvature_of_potential(const AlgebraPtr& L, const LieForm& omega);

struct CompatibilityReport {
  double derivation_residual = 0.0;
  double curvature_residual = 0.0;
  std::size_t points = 0;
  /// Per-point maxima, in sample order.
  std::vector<double> derivation_per_point;
  std::vector<double> curvature_per_point;
};
/// Derivation defect of Γ on basis pairs and the defect of R_∇ = ad_ζ.
CompatibilityReport check_compatibility(const LabConnection& nabla, const LieForm& zeta, const std::vector<Point>& points);

struct Redefinition {
  LabConnection nabla;
  LieForm zeta;
  LieForm A;
};
/// (∇, ζ, A) -> (∇ - ad_λ, ζ - d^∇λ + ½[λ ∧ λ], A + λ).
Redefinition field_redefine(const LabConnection& nabla, const LieForm& zeta, const LieForm& A, const LieForm& lambda);

}  // namespace cym
