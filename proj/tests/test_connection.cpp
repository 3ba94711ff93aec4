#include "support.hpp"

#include "cym/connection.hpp"
#include "cym/gauge.hpp"
#include "cym/sampling.hpp"

using namespace cym;
using namespace cym::test;

namespace {
std::vector<Point> some_points(const ChartPtr& chart, std::uint64_t seed, int n = 16) {
  Rng rng(seed);
  return random_points(*chart, rng, n);
}
}  // namespace

TEST_CASE("flat connection has zero curvature and d^∇ = d") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LabConnection flat = LabConnection::flat(L, chart);
  const LieForm A = random_form(chart, 1, 3, 1);
  for (const Point& x : some_points(chart, 2, 4)) {
    CHECK(colmax(curvature(flat).R(x)) == 0.0);
    CHECK(colmax(cov_ext_deriv(flat, A)(x) - exterior_derivative(A)(x)) < 1e-15);
  }
}

TEST_CASE("curvature of ad_ω is ad of dω + ½[ω∧ω]") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm w = random_form(chart, 1, 3, 3);
  const LabConnection nabla = LabConnection::adjoint(L, w);
  const Curvature c = curvature(nabla);
  REQUIRE(c.F_omega.has_value());
  const LieForm adF = ad_form(L, *c.F_omega);
  for (const Point& x : some_points(chart, 4, 8)) CHECK(colmax(c.R(x) - adF(x)) < 1e-12);
}

TEST_CASE("compatibility holds for ζ = F_ω and fails for ζ = 0 when ω is curved") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm w = random_form(chart, 1, 3, 5);
  const LabConnection nabla = LabConnection::adjoint(L, w);
  const auto pts = some_points(chart, 6);
  const CompatibilityReport good = check_compatibility(nabla, curvature_of_potential(L, w), pts);
  CHECK(good.derivation_residual < 1e-13);
  CHECK(good.curvature_residual < 1e-12);
  const CompatibilityReport bad = check_compatibility(nabla, zero_form(chart, 2, ValueKind::Algebra, 3), pts);
  CHECK(bad.curvature_residual > 0.1);
  CHECK(bad.curvature_per_point.size() == pts.size());
}

TEST_CASE("a non-derivation Γ is detected") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(9, 4);
  g.col(0) = Eigen::MatrixXd::Identity(3, 3).reshaped();  // Γ = id dx1
  const LabConnection nabla(L, constant_form(chart, 1, ValueKind::Endomorphism, 3, g));
  const CompatibilityReport r = check_compatibility(nabla, zero_form(chart, 2, ValueKind::Algebra, 3), {Point::Zero(4)});
  // id[a,b] - [a,b] - [a,b] = -[a,b], of norm 1 on basis pairs
  CHECK(r.derivation_residual == doctest::Approx(1.0));
}

TEST_CASE("d^∇∘d^∇ acts by the curvature") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LabConnection nabla = LabConnection::adjoint(L, random_form(chart, 1, 3, 7));
  const LieForm nu = random_form(chart, 0, 3, 8);
  const LieForm lhs = cov_ext_deriv(nabla, cov_ext_deriv(nabla, nu));
  const LieForm rhs = graded_product(Pairing::end_action(3), curvature(nabla).R, nu);
  for (const Point& x : some_points(chart, 9, 4)) CHECK(colmax(lhs(x) - rhs(x)) < 1e-12);
}

TEST_CASE("field redefinitions preserve F and compatibility") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm w = random_form(chart, 1, 3, 10);
  const LabConnection nabla = LabConnection::adjoint(L, w);
  const LieForm zeta = curvature_of_potential(L, w);
  const LieForm A = random_form(chart, 1, 3, 11);
  const LieForm F = field_strength(nabla, zeta, A);
  const auto pts = some_points(chart, 12, 8);
  for (std::uint64_t seed = 20; seed < 24; ++seed) {
    const Redefinition R = field_redefine(nabla, zeta, A, random_form(chart, 1, 3, seed));
    const LieForm Ft = field_strength(R.nabla, R.zeta, R.A);
    for (const Point& x : pts) CHECK(colmax(Ft(x) - F(x)) < 1e-12);
    const CompatibilityReport r = check_compatibility(R.nabla, R.zeta, pts);
    CHECK(r.derivation_residual < 1e-12);
    CHECK(r.curvature_residual < 1e-12);
  }
}

TEST_CASE("λ = ω flattens ∇ - ad_λ while λ = -ω doubles it") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm w = random_form(chart, 1, 3, 13);
  const LabConnection nabla = LabConnection::adjoint(L, w);
  const LieForm zeta = curvature_of_potential(L, w);
  const LieForm A = zero_form(chart, 1, ValueKind::Algebra, 3);
  const Redefinition plus = field_redefine(nabla, zeta, A, w);
  const Redefinition minus = field_redefine(nabla, zeta, A, -1.0 * w);
  const LieForm twice = ad_form(L, 2.0 * w);
  for (const Point& x : some_points(chart, 14, 4)) {
    CHECK(colmax(plus.nabla.gamma()(x)) == 0.0);
    CHECK(colmax(plus.zeta(x)) < 1e-12);  // the flattened ζ is F_ω - dω - [ω∧ω] + ½[ω∧ω] = 0
    CHECK(colmax(minus.nabla.gamma()(x) - twice(x)) < 1e-14);
  }
}
