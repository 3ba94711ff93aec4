#pragma once

#include "cym/connection.hpp"
#include "cym/lgb.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace cym {

/// Thrown when a gauge scenario fails the compatibility gate.
class GateError : public std::runtime_error {
 public:
  GateError(const std::string& what, CompatibilityReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const CompatibilityReport& report() const { return report_; }

 private:
  CompatibilityReport report_;
};

/// One chart-local gauge theory: ∇ = d + Γ (Γ = ad_ω for the structural bundle), ζ and A.
class GaugeScenario {
 public:
  /// Runs check_compatibility on `gate_points` and throws GateError above `gate_tol`.
  GaugeScenario(TrivLgb lgb, LabConnection nabla, LieForm zeta, LieForm A, const std::vector<Point>& gate_points,
                double gate_tol = 1e-6);

  const TrivLgb& lgb() const { return lgb_; }
  const ChartPtr& chart() const { return lgb_.chart; }
  const AlgebraPtr& algebra() const { return lgb_.L; }
  const LabConnection& nabla() const { return nabla_; }
  const LieForm& zeta() const { return zeta_; }
  const LieForm& A() const { return A_; }
  const CompatibilityReport& gate() const { return gate_; }

  /// Same data with A replaced; the gate result carries over.
  GaugeScenario with_A(LieForm A) const;

 private:
  TrivLgb lgb_;
  LabConnection nabla_;
  LieForm zeta_;
  LieForm A_;
  CompatibilityReport gate_;
};

/// F = d^∇A + ½[A ∧ A] + ζ.
LieForm field_strength(const LabConnection& nabla, const LieForm& zeta, const LieForm& A);
LieForm local_field_strength(const GaugeScenario& S);

struct ChangeOfGauge {
  LieForm A;  // Ad_{σ^{-1}} A + Δσ
  LieForm F;  // field strength of the new A
  LieForm F_expected;  // Ad_{σ^{-1}} F
};
ChangeOfGauge change_of_gauge(const GaugeScenario& S, const SectionPtr& sigma);
double change_of_gauge_residual(const ChangeOfGauge& c, const Point& x);

struct InfinitesimalGauge {
  LieForm dA;  // ∇ε - [ε, A]
  LieForm dF;  // -[ε, F]
};
InfinitesimalGauge infinitesimal_gauge(const GaugeScenario& S, const LieForm& epsilon);
struct InfinitesimalCheck {
  double A_residual;
  double F_residual;
};
/// Compares against the t-derivative at 0 of the change of gauge by exp(tε).
InfinitesimalCheck infinitesimal_gauge_check(const GaugeScenario& S, const LieForm& epsilon, const Point& x,
                                             double t_step = 1e-5);

/// d^∇F + [A ∧ F] - d^∇ζ.
LieForm bianchi_form(const LabConnection& nabla, const LieForm& zeta, const LieForm& A);
/// Residual at x through exact derivatives (throws if an input lacks them) or nested differences.
double bianchi_residual(const GaugeScenario& S, const Point& x, bool analytic);

/// -½ κ(F ∧ *F) coefficient of d^n x; orientation-independent. Singular-metric
/// points return nullopt and are counted in the chart diagnostics.
std::function<std::optional<double>(const Point&)> lagrangian_density(const GaugeScenario& S);
std::function<std::optional<double>(const Point&)> lagrangian_density(const AlgebraPtr& L, const LieForm& F);

struct QuadratureConfig {
  double radius = 20.0;
  int order = 24;
};
struct ChargeResult {
  double charge;           // quadrature plus tail
  double quadrature;
  double tail;
  double decay_power;      // fitted p in |κ(F∧F)| ~ r^{-p}
  bool divergence_warning;  // p <= 4: the integral over R^4 need not converge
  long nodes;
};
/// (1/16π²) ∫ κ(F ∧ F) over [-R, R]^4 with an estimated tail beyond the box.
ChargeResult instanton_charge(const GaugeScenario& S, const QuadratureConfig& q = {});
ChargeResult instanton_charge(const AlgebraPtr& L, const LieForm& F, const QuadratureConfig& q = {});

}  // namespace cym
