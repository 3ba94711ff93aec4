#include "support.hpp"

#include "cym/gauge.hpp"
#include "cym/harness/scenario.hpp"
#include "cym/sampling.hpp"

#include <cmath>

using namespace cym;
using namespace cym::test;

namespace {

GaugeScenario curved(std::uint64_t seed) {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm w = random_form(chart, 1, 3, seed);
  const TrivLgb lgb(chart, L, w);
  Rng rng(seed + 100);
  return GaugeScenario(lgb, lgb.nabla(), curvature_of_potential(L, w), random_form(chart, 1, 3, seed + 1),
                       random_points(*chart, rng, 8));
}

}  // namespace

TEST_CASE("incompatible data is stopped at the gate") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const TrivLgb lgb(chart, L, random_form(chart, 1, 3, 1));
  CHECK_THROWS_AS(GaugeScenario(lgb, lgb.nabla(), zero_form(chart, 2, ValueKind::Algebra, 3),
                                zero_form(chart, 1, ValueKind::Algebra, 3), {Point::Zero(4)}),
                  GateError);
}

TEST_CASE("infinitesimal gauge variation of A = dx1 e1 by ε = e3 is -dx1 e2") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const TrivLgb lgb(chart, L, zero_form(chart, 1, ValueKind::Algebra, 3));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 4);
  a(0, 0) = 1.0;
  const GaugeScenario S(lgb, lgb.nabla(), zero_form(chart, 2, ValueKind::Algebra, 3),
                        constant_form(chart, 1, ValueKind::Algebra, 3, a), {Point::Zero(4)});
  const LieForm eps = constant_form(chart, 0, ValueKind::Algebra, 3, vec({0, 0, 1}));
  const InfinitesimalGauge d = infinitesimal_gauge(S, eps);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 4);
  expected(1, 0) = -1.0;
  const Point x = vec({0.1, 0.2, 0.3, 0.4});
  CHECK((d.dA(x) - expected).norm() < 1e-15);
  CHECK(d.dF(x).norm() < 1e-15);
  const InfinitesimalCheck c = infinitesimal_gauge_check(S, eps, x);
  CHECK(c.A_residual < 1e-9);
  CHECK(c.F_residual < 1e-9);
}

TEST_CASE("constant change of gauge on a flat background conjugates A") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const TrivLgb lgb(chart, L, zero_form(chart, 1, ValueKind::Algebra, 3));
  const LieForm A = random_form(chart, 1, 3, 2);
  const GaugeScenario S(lgb, lgb.nabla(), zero_form(chart, 2, ValueKind::Algebra, 3), A, {Point::Zero(4)});
  const GroupElement g = exp_elem(*L, vec({0.5, -0.3, 1.2}));
  const ChangeOfGauge c = change_of_gauge(S, constant_section(L, g));
  const Point x = vec({-0.3, 0.6, 0.2, -0.1});
  // brute force: g⁻¹ (Σ A^a R_a) g, read back with -2 tr(R_b ·)
  const Eigen::MatrixXd Ax = A(x), got = c.A(x);
  for (int i = 0; i < 4; ++i) {
    const CMatrix M = g.matrix().inverse() * L->to_matrix(Ax.col(i)) * g.matrix();
    for (int b = 0; b < 3; ++b)
      CHECK(got(b, i) == doctest::Approx(-2.0 * (L->rep()[static_cast<std::size_t>(b)] * M).trace().real()).epsilon(1e-12));
  }
  CHECK(change_of_gauge_residual(c, x) < 1e-8);
}

TEST_CASE("local gauge laws on a curved background") {
  const GaugeScenario S = curved(3);
  const SectionPtr s = exp_section(S.algebra(), random_form(S.chart(), 0, 3, 4, 0.8));
  const ChangeOfGauge c = change_of_gauge(S, s);
  const LieForm eps = random_form(S.chart(), 0, 3, 5);
  Rng rng(6);
  for (const Point& x : random_points(*S.chart(), rng, 4)) {
    CHECK(change_of_gauge_residual(c, x) < 1e-7);
    const InfinitesimalCheck ic = infinitesimal_gauge_check(S, eps, x);
    CHECK(ic.A_residual < 1e-6);
    CHECK(ic.F_residual < 1e-6);
  }
}

TEST_CASE("generalized Bianchi identity on both derivative paths") {
  const GaugeScenario S = curved(7);
  Rng rng(8);
  for (const Point& x : random_points(*S.chart(), rng, 4)) {
    CHECK(bianchi_residual(S, x, true) < 1e-10);
    CHECK(bianchi_residual(S, x, false) < 1e-4);
  }
  const GaugeScenario no_exact = S.with_A(S.A().without_analytic_d());
  CHECK_THROWS_AS(bianchi_residual(no_exact, Point::Zero(4), true), ContractViolation);
}

TEST_CASE("Lagrangian density of c dx1∧dx2 e1 is -c²/2") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  for (double c : {1.0, 3.0}) {
    PolyForm p(4, 2, ValueKind::Algebra, 3);
    p.add({0, 1}, {vec({c, 0, 0}), exps({0, 0, 0, 0}), 0.0});
    CHECK(*lagrangian_density(L, to_lie_form(chart, p))(Point::Zero(4)) == doctest::Approx(-0.5 * c * c));
  }
}

TEST_CASE("Lagrangian density is gauge invariant") {
  const GaugeScenario S = curved(9);
  const auto L0 = lagrangian_density(S);
  const auto L1 = lagrangian_density(S.algebra(), change_of_gauge(S, exp_section(S.algebra(), random_form(S.chart(), 0, 3, 10, 0.8))).F);
  Rng rng(11);
  for (const Point& x : random_points(*S.chart(), rng, 4)) CHECK(std::abs(*L1(x) - *L0(x)) < 1e-8);
}

TEST_CASE("singular metric points are skipped and counted") {
  auto chart = std::make_shared<Chart>(
      4, std::vector<std::pair<double, double>>(4, {-1.0, 1.0}),
      [](const Point& x) { return Eigen::MatrixXd(x[0] * Eigen::MatrixXd::Identity(4, 4)); }, 1, "degenerate");
  const auto density = lagrangian_density(LieAlgebra::su2(), random_form(chart, 2, 3, 12));
  const long before = chart->diagnostics().skipped_singular.load();
  CHECK_FALSE(density(Point::Zero(4)).has_value());
  CHECK(chart->diagnostics().skipped_singular.load() == before + 1);
}

TEST_CASE("BPST: density -48 at the origin and unit charge") {
  const auto s = harness::builtin_scenario("bpst");
  const LieForm F = curvature_of_potential(s.L, *s.omega);
  CHECK(*lagrangian_density(s.L, F)(Point::Zero(4)) == doctest::Approx(-48.0).epsilon(1e-12));
  const ChargeResult q = instanton_charge(s.L, F, {20.0, 24});
  CHECK(std::abs(q.charge - 1.0) < 1e-2);
  CHECK_FALSE(q.divergence_warning);
  CHECK(q.decay_power == doctest::Approx(8.0).epsilon(0.01));
  CHECK(q.tail > 0.0);
  CHECK(q.nodes == 24L * 24 * 24 * 24);
}
