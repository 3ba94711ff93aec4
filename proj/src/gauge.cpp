#include "cym/gauge.hpp"

#include "cym/kernels.hpp"
#include "cym/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cym {

GaugeScenario::GaugeScenario(TrivLgb lgb, LabConnection nabla, LieForm zeta, LieForm A,
                             const std::vector<Point>& gate_points, double gate_tol)
    : lgb_(std::move(lgb)), nabla_(std::move(nabla)), zeta_(std::move(zeta)), A_(std::move(A)) {
  require(A_.degree() == 1 && A_.kind() == ValueKind::Algebra, "A must be an algebra-valued 1-form");
  require(zeta_.degree() == 2 && zeta_.kind() == ValueKind::Algebra, "ζ must be an algebra-valued 2-form");
  gate_ = check_compatibility(nabla_, zeta_, gate_points);
  if (gate_.derivation_residual > gate_tol || gate_.curvature_residual > gate_tol)
    throw GateError("compatibility gate failed: derivation residual " + std::to_string(gate_.derivation_residual) +
                        ", curvature residual " + std::to_string(gate_.curvature_residual),
                    gate_);
}

GaugeScenario GaugeScenario::with_A(LieForm A) const {
  GaugeScenario out = *this;
  out.A_ = std::move(A);
  return out;
}

LieForm field_strength(const LabConnection& nabla, const LieForm& zeta, const LieForm& A) {
  return cov_ext_deriv(nabla, A) + 0.5 * graded_product(Pairing::bracket(nabla.algebra()), A, A) + zeta;
}

LieForm local_field_strength(const GaugeScenario& S) { return field_strength(S.nabla(), S.zeta(), S.A()); }

ChangeOfGauge change_of_gauge(const GaugeScenario& S, const SectionPtr& sigma) {
  const LieForm A_new = conjugate_by_inverse(S.algebra(), sigma, S.A()) + darboux(S.lgb(), sigma);
  return {A_new, field_strength(S.nabla(), S.zeta(), A_new),
          conjugate_by_inverse(S.algebra(), sigma, local_field_strength(S))};
}

double change_of_gauge_residual(const ChangeOfGauge& c, const Point& x) {
  return (c.F(x) - c.F_expected(x)).colwise().norm().maxCoeff();
}

InfinitesimalGauge infinitesimal_gauge(const GaugeScenario& S, const LieForm& epsilon) {
  require(epsilon.degree() == 0 && epsilon.kind() == ValueKind::Algebra, "ε must be an algebra-valued 0-form");
  const Pairing br = Pairing::bracket(S.algebra());
  return {cov_ext_deriv(S.nabla(), epsilon) - graded_product(br, epsilon, S.A()),
          -1.0 * graded_product(br, epsilon, local_field_strength(S))};
}

InfinitesimalCheck infinitesimal_gauge_check(const GaugeScenario& S, const LieForm& epsilon, const Point& x,
                                             double t_step) {
  const InfinitesimalGauge inf = infinitesimal_gauge(S, epsilon);
  // Fourth-order x-differences keep the field strength of the transformed
  // potential accurate enough to survive the t-difference quotient.
  FdSettings fine = S.A().fd();
  fine.h = 1e-3;
  fine.order = 4;
  auto at = [&](double t) {
    const ChangeOfGauge c = change_of_gauge(S, exp_section(S.algebra(), t * epsilon));
    const LieForm A_t = c.A.with_fd(fine);
    return std::make_pair(c.A(x), field_strength(S.nabla(), S.zeta(), A_t)(x));
  };
  const auto plus = at(t_step), minus = at(-t_step);
  const Eigen::MatrixXd dA = (plus.first - minus.first) / (2.0 * t_step);
  const Eigen::MatrixXd dF = (plus.second - minus.second) / (2.0 * t_step);
  return {(dA - inf.dA(x)).colwise().norm().maxCoeff(), (dF - inf.dF(x)).colwise().norm().maxCoeff()};
}

LieForm bianchi_form(const LabConnection& nabla, const LieForm& zeta, const LieForm& A) {
  const LieForm F = field_strength(nabla, zeta, A);
  return cov_ext_deriv(nabla, F) + graded_product(Pairing::bracket(nabla.algebra()), A, F) - cov_ext_deriv(nabla, zeta);
}

double bianchi_residual(const GaugeScenario& S, const Point& x, bool analytic) {
  if (S.chart()->n() < 3) return 0.0;
  if (analytic) {
    require(S.A().has_analytic_d() && S.nabla().gamma().has_analytic_d() && S.zeta().has_analytic_d(),
            "analytic Bianchi path needs exact derivatives of A, Γ and ζ");
    return bianchi_form(S.nabla(), S.zeta(), S.A())(x).colwise().norm().maxCoeff();
  }
  const LabConnection nabla =
      S.nabla().omega() ? LabConnection::adjoint(S.algebra(), S.nabla().omega()->without_analytic_d())
                        : LabConnection(S.algebra(), S.nabla().gamma().without_analytic_d());
  return bianchi_form(nabla, S.zeta().without_analytic_d(), S.A().without_analytic_d())(x)
      .colwise()
      .norm()
      .maxCoeff();
}

std::function<std::optional<double>(const Point&)> lagrangian_density(const AlgebraPtr& L, const LieForm& F) {
  require(F.degree() == 2 && F.n() == 4, "Lagrangian density needs a 2-form on a 4-dimensional chart");
  const LieForm top = kappa_wedge_top(L, F, hodge_star(F));
  const ChartPtr chart = F.chart();
  return [top, chart](const Point& x) -> std::optional<double> {
    try {
      return -0.5 * chart->orientation() * top(x)(0, 0);
    } catch (const SingularMetricError&) {
      chart->diagnostics().skipped_singular.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
  };
}

std::function<std::optional<double>(const Point&)> lagrangian_density(const GaugeScenario& S) {
  return lagrangian_density(S.algebra(), local_field_strength(S));
}

namespace {

/// Average of κ(F ∧ F) over the 24 vertices of the 24-cell scaled to radius r.
double spherical_average(const LieForm& top, double r) {
  std::vector<Point> dirs;
  for (int i = 0; i < 4; ++i)
    for (int s = -1; s <= 1; s += 2) dirs.push_back(Point::Unit(4, i) * s);
  for (int m = 0; m < 16; ++m) {
    Point p(4);
    for (int i = 0; i < 4; ++i) p[i] = ((m >> i) & 1) ? 0.5 : -0.5;
    dirs.push_back(p);
  }
  double sum = 0.0;
  for (const Point& d : dirs) sum += top(r * d)(0, 0);
  return sum / static_cast<double>(dirs.size());
}

}  // namespace

ChargeResult instanton_charge(const AlgebraPtr& L, const LieForm& F, const QuadratureConfig& q) {
  require(F.degree() == 2 && F.n() == 4, "instanton charge needs a 2-form on a 4-dimensional chart");
  const int d = L->dim();
  const Rule1d rule = sinh_graded_rule(q.order, q.radius);
  const std::size_t m = rule.nodes.size();
  const std::size_t N = m * m * m * m;
  std::vector<double> Fsoa(static_cast<std::size_t>(6 * d) * N);
  std::vector<double> w(N);
  parallel_for(N, [&](std::size_t p) {
    std::size_t r = p;
    Point x(4);
    double wp = 1.0;
    for (int i = 0; i < 4; ++i) {
      x[i] = rule.nodes[r % m];
      wp *= rule.weights[r % m];
      r /= m;
    }
    w[p] = wp;
    const Eigen::MatrixXd Fx = F(x);
    for (int c = 0; c < 6; ++c)
      for (int a = 0; a < d; ++a) Fsoa[(static_cast<std::size_t>(c * d + a)) * N + p] = Fx(a, c);
  });
  std::vector<kernels::WedgeTerm> terms;
  for (const Shuffle& s : shuffle_table(4, 2, 2)[0]) terms.push_back({s.left, s.right, static_cast<double>(s.sign)});
  const Eigen::MatrixXd kappa = L->kappa();
  std::vector<double> kap(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) kap[static_cast<std::size_t>(a * d + b)] = kappa(a, b);
  std::vector<double> dens(N);
  kernels::wedge_pair_density(Fsoa.data(), Fsoa.data(), N, d, kap.data(), terms.data(), static_cast<int>(terms.size()),
                              dens.data());
  const double norm = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
  ChargeResult out{};
  out.nodes = static_cast<long>(N);
  out.quadrature = norm * kernels::weighted_sum(w.data(), dens.data(), N);

  // tail beyond the box from a power-law fit of the spherical averages at R/2 and R
  const LieForm top = kappa_wedge_top(L, F, F);
  const double R = q.radius;
  const double qh = spherical_average(top, 0.5 * R), qR = spherical_average(top, R);
  out.decay_power = std::numeric_limits<double>::infinity();
  out.tail = 0.0;
  if (std::abs(qR) > 0.0 && std::abs(qh) > 0.0) {
    out.decay_power = std::log(std::abs(qh) / std::abs(qR)) / std::log(2.0);
    if (out.decay_power <= 4.0) {
      out.divergence_warning = true;
    } else {
      // ball with the box's volume
      const double R_eq = R * std::pow(32.0 / (std::numbers::pi * std::numbers::pi), 0.25);
      const double p = out.decay_power;
      out.tail = norm * 2.0 * std::numbers::pi * std::numbers::pi * qR * std::pow(R, p) * std::pow(R_eq, 4.0 - p) /
                 (p - 4.0);
    }
  }
  out.charge = out.quadrature + out.tail;
  return out;
}

ChargeResult instanton_charge(const GaugeScenario& S, const QuadratureConfig& q) {
  return instanton_charge(S.algebra(), local_field_strength(S), q);
}

}  // namespace cym
