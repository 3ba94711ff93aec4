#include "support.hpp"

#include "cym/gauge.hpp"
#include "cym/principal.hpp"
#include "cym/sampling.hpp"

using namespace cym;
using namespace cym::test;

namespace {

struct Fixture {
  ChartPtr chart = box4();
  AlgebraPtr L = LieAlgebra::su2();
  LieForm w = random_form(chart, 1, 3, 1);
  TrivPrincipal P{TrivLgb(chart, L, w), random_form(chart, 1, 3, 2)};
  LieForm zeta = curvature_of_potential(L, w);
};

PTangent tangent(Rng& rng) { return {rng.uniform_vector(4, -1, 1), rng.uniform_vector(3, -1, 1)}; }

}  // namespace

TEST_CASE("flat trivial case: A(X, V) = V and horizontal lifts are (X, 0)") {
  const auto chart = box4();
  const auto L = LieAlgebra::su2();
  const TrivPrincipal P(TrivLgb(chart, L, zero_form(chart, 1, ValueKind::Algebra, 3)),
                        zero_form(chart, 1, ValueKind::Algebra, 3));
  Rng rng(3);
  const GroupElement h = random_group_element(*L, rng);
  const PTangent t = tangent(rng);
  CHECK((connection_one_form(P, Point::Zero(4), h, t) - t.V).norm() < 1e-15);
  const PTangent lift = horizontal_lift(P, Point::Zero(4), h, t.X);
  CHECK((lift.X - t.X).norm() == 0.0);
  CHECK(lift.V.norm() < 1e-15);
}

TEST_CASE("connection form: vertical reproduction, projections and horizontal kernel") {
  Fixture f;
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const Point x = rng.uniform_vector(4, -0.9, 0.9);
    const GroupElement h = random_group_element(*f.L, rng);
    const PTangent t = tangent(rng);
    const Eigen::VectorXd V = rng.uniform_vector(3, -1, 1);
    CHECK((connection_one_form(f.P, x, h, {Vector::Zero(4), V}) - V).norm() < 1e-14);
    const PTangent hp = horizontal_projection(f.P, x, h, t), vp = vertical_projection(f.P, x, h, t);
    CHECK((hp.stacked() + vp.stacked() - t.stacked()).norm() < 1e-14);
    CHECK(connection_one_form(f.P, x, h, hp).norm() < 1e-14);
    CHECK(vp.X.norm() == 0.0);
  }
}

TEST_CASE("equivariance under the modified pushforward") {
  Fixture f;
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const Point x = rng.uniform_vector(4, -0.9, 0.9);
    const GroupElement h = random_group_element(*f.L, rng), g = random_group_element(*f.L, rng);
    CHECK(equivariance_residual(f.P, x, h, g, tangent(rng)) < 1e-13);
    CHECK(kernel_invariance_residual(f.P, x, h, g, rng.uniform_vector(4, -1, 1)) < 1e-13);
    CHECK(projection_commutation_residual(f.P, x, h, g, tangent(rng)) < 1e-13);
    CHECK(pushforward_rank(f.P, x, g) == 7);
  }
}

TEST_CASE("modified pushforward is independent of the section only through σ(x)") {
  Fixture f;
  Rng rng(6);
  const Point x = vec({0.2, 0.3, -0.1, 0.5});
  const SectionPtr s1 = exp_section(f.L, random_form(f.chart, 0, 3, 7, 0.8));
  // s2 = s1 * exp(M (y - x)) passes through s1(x)
  PolyForm phi(4, 0, ValueKind::Algebra, 3);
  const Eigen::MatrixXd M = rng.uniform_vector(12, -1, 1).reshaped(3, 4);
  phi.add({}, {-(M * x), exps({0, 0, 0, 0}), 0.0});
  for (int i = 0; i < 4; ++i) {
    std::vector<int> e(4, 0);
    e[static_cast<std::size_t>(i)] = 1;
    phi.add({}, {M.col(i), e, 0.0});
  }
  const SectionPtr s2 = product_section(s1, exp_section(f.L, to_lie_form(f.chart, phi)));
  const GroupElement h = random_group_element(*f.L, rng);
  CHECK(section_independence_residual(f.P, x, h, s1, s2, tangent(rng)) < 1e-9);
  // a section through a different point of the fibre is caught
  const SectionPtr s3 = exp_section(f.L, random_form(f.chart, 0, 3, 8, 0.8));
  CHECK_THROWS_AS(section_independence_residual(f.P, x, h, s1, s3, tangent(rng)), ConsistencyError);
  CHECK(action_differential_residual(f.P, x, h, s1, tangent(rng), rng.uniform_vector(3, -1, 1)) < 1e-9);
}

TEST_CASE("mixed bracket of a horizontal lift with a fundamental field") {
  Fixture f;
  Rng rng(9);
  const LieForm nu = random_form(f.chart, 0, 3, 10);
  for (int k = 0; k < 4; ++k)
    CHECK(mixed_bracket_residual(f.P, rng.uniform_vector(4, -0.8, 0.8), random_group_element(*f.L, rng),
                                 rng.uniform_vector(4, -1, 1), nu) < 1e-5);
}

TEST_CASE("structure equation, horizontality and the identity gauge") {
  Fixture f;
  Rng rng(11);
  const LieForm Floc = field_strength(f.P.lgb.nabla(), f.zeta, f.P.A_local);
  for (int k = 0; k < 4; ++k) {
    const Point x = rng.uniform_vector(4, -0.8, 0.8);
    const GroupElement h = random_group_element(*f.L, rng);
    const FieldStrengthAt F(f.P, f.zeta, x, h);
    const PTangent t1 = tangent(rng), t2 = tangent(rng);
    CHECK((F.direct(t1, t2) - F.structure(t1, t2)).norm() < 1e-8);
    const PTangent v{Vector::Zero(4), rng.uniform_vector(3, -1, 1)};
    CHECK(F.structure(v, t1).norm() == 0.0);
    CHECK(F.direct(v, t1).norm() < 1e-8);
    const FieldStrengthAt Fe(f.P, f.zeta, x, GroupElement::identity(*f.L));
    const PTangent a{Vector::Unit(4, 0), Eigen::VectorXd::Zero(3)}, b{Vector::Unit(4, 2), Eigen::VectorXd::Zero(3)};
    CHECK((Fe.direct(a, b) - Floc(x).col(1)).norm() < 1e-8);  // component dx1∧dx3
  }
}

TEST_CASE("total-space gauge transformation by an automorphism") {
  Fixture f;
  Rng rng(12);
  const SectionPtr tau = exp_section(f.L, random_form(f.chart, 0, 3, 13, 0.8));
  for (int k = 0; k < 4; ++k) {
    const GaugeTransformCheck c = gauge_transform_total(f.P, f.zeta, tau, rng.uniform_vector(4, -0.8, 0.8),
                                                        random_group_element(*f.L, rng), tangent(rng), tangent(rng));
    CHECK(c.A_residual < 1e-8);
    CHECK(c.F_residual < 1e-7);
  }
}
