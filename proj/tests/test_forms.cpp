#include "support.hpp"

#include <cmath>

using namespace cym;
using namespace cym::test;

namespace {

LieForm dx_pair(const ChartPtr& chart, int i, int j, int dim, const Eigen::VectorXd& value) {
  PolyForm p(chart->n(), 2, ValueKind::Algebra, dim);
  p.add({i, j}, {value, std::vector<int>(static_cast<std::size_t>(chart->n()), 0), 0.0});
  return to_lie_form(chart, p);
}

}  // namespace

TEST_CASE("Euclidean star on basis 2-forms follows the Levi-Civita symbol") {
  const auto chart = box4();
  const Point x = Point::Zero(4);
  const Eigen::MatrixXd s12 = hodge_star(dx_pair(chart, 0, 1, 1, vec({1})))(x);
  CHECK(s12(0, 5) == doctest::Approx(1.0));  // dx3∧dx4
  CHECK(s12.norm() == doctest::Approx(1.0));
  const Eigen::MatrixXd s13 = hodge_star(dx_pair(chart, 0, 2, 1, vec({1})))(x);
  CHECK(s13(0, 4) == doctest::Approx(-1.0));  // -dx2∧dx4
  const auto flipped = Chart::euclidean(4, std::vector<std::pair<double, double>>(4, {-1.0, 1.0}), -1);
  CHECK(hodge_star(dx_pair(flipped, 0, 1, 1, vec({1})))(x)(0, 5) == doctest::Approx(-1.0));
}

TEST_CASE("double star is (-1)^{k(n-k)} times the metric sign") {
  const auto mink = Chart::minkowski(4, std::vector<std::pair<double, double>>(4, {-1.0, 1.0}));
  const auto eucl = box4();
  const Point x = vec({0.1, -0.3, 0.5, 0.2});
  for (std::uint64_t seed : {1u, 2u}) {
    const LieForm F = random_form(mink, 2, 3, seed);
    CHECK(colmax(hodge_star(hodge_star(F))(x) + F(x)) < 1e-13);
    const LieForm A = random_form(mink, 1, 3, seed);
    CHECK(colmax(hodge_star(hodge_star(A))(x) - A(x)) < 1e-13);
    const LieForm Fe = random_form(eucl, 2, 3, seed);
    CHECK(colmax(hodge_star(hodge_star(Fe))(x) - Fe(x)) < 1e-13);
  }
}

TEST_CASE("star on 2-forms is conformally invariant in four dimensions") {
  const auto round = Chart::round_sphere(4, std::vector<std::pair<double, double>>(4, {-2.0, 2.0}));
  const auto flat = Chart::euclidean(4, std::vector<std::pair<double, double>>(4, {-2.0, 2.0}));
  Rng rng(9);
  PolyForm p = random_poly_form(4, 2, ValueKind::Algebra, 3, rng, 0.5, 1);
  const Point x = vec({0.7, -1.2, 0.4, 1.5});
  CHECK(colmax(hodge_star(to_lie_form(round, p))(x) - hodge_star(to_lie_form(flat, p))(x)) < 1e-13);
}

TEST_CASE("κ(F ∧ *F) of c dx1∧dx2 e1 is c²") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  for (double c : {1.0, 2.5, -0.4}) {
    const LieForm F = dx_pair(chart, 0, 1, 3, vec({c, 0, 0}));
    CHECK(kappa_wedge_top(L, F, hodge_star(F))(Point::Zero(4))(0, 0) == doctest::Approx(c * c));
  }
}

TEST_CASE("form evaluation is antisymmetric in its vector arguments") {
  const auto chart = box4();
  const LieForm w = dx_pair(chart, 0, 1, 1, vec({1}));
  const Point x = Point::Zero(4);
  const Vector e1 = Vector::Unit(4, 0), e2 = Vector::Unit(4, 1);
  CHECK(eval_form(w, x, {e1, e2})[0] == doctest::Approx(1.0));
  CHECK(eval_form(w, x, {e2, e1})[0] == doctest::Approx(-1.0));
  CHECK(eval_form(w, x, {e1, e1})[0] == doctest::Approx(0.0));
  PolyForm p(4, 2, ValueKind::Algebra, 1), q(4, 2, ValueKind::Algebra, 1);
  p.add({1, 0}, {vec({1}), exps({0, 0, 0, 0}), 0.0});
  q.add({0, 1}, {vec({-1}), exps({0, 0, 0, 0}), 0.0});
  CHECK((p.eval(x) - q.eval(x)).norm() == 0.0);
}

TEST_CASE("graded commutativity of the κ pairing") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const Point x = vec({0.2, 0.1, -0.4, 0.3});
  const LieForm a = random_form(chart, 1, 3, 4), b = random_form(chart, 1, 3, 5), f = random_form(chart, 2, 3, 6);
  const Pairing k = Pairing::kappa(L);
  CHECK(colmax(graded_product(k, a, b)(x) + graded_product(k, b, a)(x)) < 1e-14);
  CHECK(colmax(graded_product(k, a, f)(x) - graded_product(k, f, a)(x)) < 1e-14);
}

TEST_CASE("exact derivative of rational forms agrees with differences") {
  const auto chart = box4(2.0);
  Rng rng(21);
  for (int degree = 0; degree < 4; ++degree) {
    PolyForm p = random_poly_form(4, degree, ValueKind::Algebra, 3, rng, 0.5, 2);
    for (auto& comp : p.components)
      for (std::size_t t = 0; t < comp.size(); t += 2) comp[t].radial_power = 1.5;
    const LieForm f = to_lie_form(chart, p);
    const Point x = vec({0.3, -0.8, 1.1, 0.2});
    CHECK(colmax(exterior_derivative(f)(x) - exterior_derivative(f.without_analytic_d())(x)) < 1e-8);
  }
}

TEST_CASE("d∘d vanishes exactly and under nested differences") {
  const auto chart = box4();
  const LieForm A = random_form(chart, 1, 3, 7);
  const Point x = vec({0.1, 0.2, -0.3, 0.4});
  CHECK(colmax(exterior_derivative(exterior_derivative(A))(x)) < 1e-14);
  const LieForm Afd = A.without_analytic_d();
  CHECK(colmax(exterior_derivative(exterior_derivative(Afd))(x)) < 1e-5);
}

TEST_CASE("Leibniz rule for the bracket product") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm a = random_form(chart, 1, 3, 8), b = random_form(chart, 1, 3, 9);
  const Pairing br = Pairing::bracket(L);
  const Point x = vec({-0.2, 0.5, 0.1, 0.3});
  const LieForm exact = exterior_derivative(graded_product(br, a, b));
  const LieForm fd = exterior_derivative(graded_product(br, a.without_analytic_d(), b.without_analytic_d()));
  CHECK(exact.has_analytic_d());
  CHECK(colmax(exact(x) - fd(x)) < 1e-8);
}

TEST_CASE("one-sided stencils at the box edge are counted") {
  const auto chart = box4();
  const LieForm A = random_form(chart, 1, 3, 10).without_analytic_d();
  const long before = chart->diagnostics().reduced_stencils.load();
  exterior_derivative(A)(vec({1.0, 0.0, 0.0, 0.0}));
  CHECK(chart->diagnostics().reduced_stencils.load() > before);
}

TEST_CASE("degenerate metrics raise at evaluation time") {
  auto chart = std::make_shared<Chart>(
      4, std::vector<std::pair<double, double>>(4, {-1.0, 1.0}),
      [](const Point& x) { return Eigen::MatrixXd(x[0] * Eigen::MatrixXd::Identity(4, 4)); }, 1, "degenerate");
  const LieForm F = random_form(chart, 2, 3, 11);
  const LieForm sF = hodge_star(F);
  CHECK_THROWS_AS(sF(Point::Zero(4)), SingularMetricError);
  CHECK_NOTHROW(sF(vec({0.5, 0, 0, 0})));
}

TEST_CASE("contract violations on mismatched degrees") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const LieForm A = random_form(chart, 1, 3, 12);
  CHECK_THROWS_AS(kappa_wedge_top(L, A, A), ContractViolation);
  const LieForm other = random_form(Chart::euclidean(3, std::vector<std::pair<double, double>>(3, {-1.0, 1.0})), 1, 3, 1);
  CHECK_THROWS_AS(A + other, ContractViolation);
}
