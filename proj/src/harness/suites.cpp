#include "cym/harness/suites.hpp"

#include "cym/fd.hpp"
#include "cym/kernels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace cym::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t salt_of(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

class Ctx {
 public:
  explicit Ctx(const Scenario& s)
      : s_(s), lgb_(s.lgb()), P_(lgb_, s.A), pts_(sample_points(*s.chart, s.plan)) {}

  const Scenario& scenario() const { return s_; }
  const AlgebraPtr& L() const { return s_.L; }
  const ChartPtr& chart() const { return s_.chart; }
  const TrivLgb& lgb() const { return lgb_; }
  const TrivPrincipal& P() const { return P_; }
  const std::vector<Point>& points() const { return pts_; }
  int probes() const { return s_.plan.tangent_probes; }
  int n() const { return s_.chart->n(); }
  int dim() const { return s_.L->dim(); }

  Rng rng(const std::string& salt, std::size_t i = 0) const {
    return Rng(mix(s_.plan.seed ^ mix(salt_of(salt) + i)));
  }

  /// Throws GateError when (∇, ζ) is not compatible.
  const GaugeScenario& gauge() {
    if (!gauge_) gauge_.emplace(s_.gauge());
    return *gauge_;
  }

  double coeff_scale() const { return 1.0 / std::max(1.0, s_.chart->scale()); }

  LieForm random_form(Rng& rng, int degree, double scale) const {
    return to_lie_form(chart(), random_poly_form(n(), degree, ValueKind::Algebra, dim(), rng, scale * coeff_scale(), 2));
  }

  SectionPtr random_section(Rng& rng) const { return exp_section(L(), random_form(rng, 0, 0.8)); }

  /// Named scenario entries first, topped up with seeded random sections.
  std::vector<SectionPtr> sections(const std::map<std::string, SectionPtr>& named, std::size_t count,
                                   const std::string& salt) const {
    std::vector<SectionPtr> out;
    for (const auto& [name, sec] : named)
      if (out.size() < count) out.push_back(sec);
    Rng r = rng(salt);
    while (out.size() < count) out.push_back(random_section(r));
    return out;
  }

  Vector random_vector(Rng& rng) const { return rng.uniform_vector(n(), -1.0, 1.0); }
  PTangent random_tangent(Rng& rng) const { return {random_vector(rng), rng.uniform_vector(dim(), -1.0, 1.0)}; }

  std::vector<double> per_point(const std::string& salt,
                                const std::function<double(std::size_t, const Point&, Rng&)>& fn) const {
    std::vector<double> out(pts_.size());
    parallel_for(pts_.size(), [&](std::size_t i) {
      Rng r = rng(salt, i);
      out[i] = fn(i, pts_[i], r);
    });
    return out;
  }

  std::vector<double> per_sample(std::size_t count, const std::string& salt,
                                 const std::function<double(Rng&)>& fn) const {
    std::vector<double> out(count);
    parallel_for(count, [&](std::size_t i) {
      Rng r = rng(salt, i);
      out[i] = fn(r);
    });
    return out;
  }

 private:
  const Scenario& s_;
  TrivLgb lgb_;
  TrivPrincipal P_;
  std::vector<Point> pts_;
  std::optional<GaugeScenario> gauge_;
};

struct CheckDef {
  std::string name;
  double tolerance;
  std::function<std::vector<double>(Ctx&)> run;
  std::function<bool(const Ctx&)> applies = nullptr;
  bool lower_bound = false;
};

struct SuiteDef {
  std::string name;
  std::string anchor;
  std::vector<CheckDef> checks;
};

double colmax(const Eigen::MatrixXd& M) { return M.size() == 0 ? 0.0 : M.colwise().norm().maxCoeff(); }

bool four_dim(const Ctx& c) { return c.n() == 4; }
bool topological(const Ctx& c) {
  return four_dim(c) && c.scenario().expected_charge.has_value() && c.scenario().nabla.omega().has_value();
}
bool analytic_inputs(const Ctx& c) {
  const Scenario& s = c.scenario();
  return s.A.has_analytic_d() && s.nabla.gamma().has_analytic_d() && s.zeta.has_analytic_d();
}

constexpr std::size_t kAlgebraSamples = 1000;
constexpr std::size_t kSectionPairs = 8;
constexpr std::size_t kGaugeSections = 4;
constexpr std::size_t kRedefinitions = 8;

// ------------------------------------------------------------------ suites

SuiteDef algebra_suite() {
  return {
      "algebra",
      "bracket satisfies Jacobi; Ad is a group homomorphism and integrates ad; κ is Ad-invariant",
      {
          {"jacobi", 1e-12, [](Ctx& c) {
             const LieAlgebra& L = *c.L();
             const double structural = jacobi_defect(c.dim(), L.structure_constants()).residual;
             return c.per_sample(kAlgebraSamples, "algebra/jacobi", [&](Rng& r) {
               const Eigen::VectorXd X = random_algebra_element(L, r, 1.0), Y = random_algebra_element(L, r, 1.0),
                                     Z = random_algebra_element(L, r, 1.0);
               const Eigen::VectorXd cyc =
                   bracket(L, X, bracket(L, Y, Z)) + bracket(L, Y, bracket(L, Z, X)) + bracket(L, Z, bracket(L, X, Y));
               return std::max(structural, cyc.norm());
             });
           }},
          {"ad-homomorphism", 1e-10, [](Ctx& c) {
             const LieAlgebra& L = *c.L();
             return c.per_sample(kAlgebraSamples, "algebra/ad-hom", [&](Rng& r) {
               const GroupElement g = random_group_element(L, r), q = random_group_element(L, r);
               const Eigen::VectorXd X = random_algebra_element(L, r, 1.0), Y = random_algebra_element(L, r, 1.0);
               const double group = (adjoint_group_matrix(L, g * q) - adjoint_group_matrix(L, g) * adjoint_group_matrix(L, q))
                                        .norm();
               const Eigen::MatrixXd aX = adjoint_algebra(L, X), aY = adjoint_algebra(L, Y);
               const double alg = (adjoint_algebra(L, bracket(L, X, Y)) - (aX * aY - aY * aX)).norm();
               return std::max(group, alg);
             });
           }},
          {"kappa-invariance", 1e-10, [](Ctx& c) {
             const LieAlgebra& L = *c.L();
             return c.per_sample(kAlgebraSamples, "algebra/kappa", [&](Rng& r) {
               const GroupElement g = random_group_element(L, r);
               const Eigen::VectorXd X = random_algebra_element(L, r, 1.0), Y = random_algebra_element(L, r, 1.0),
                                     Z = random_algebra_element(L, r, 1.0);
               const double inf = std::abs(kappa_pair(L, bracket(L, Z, X), Y) + kappa_pair(L, X, bracket(L, Z, Y)));
               const double grp = std::abs(kappa_pair(L, adjoint_group(L, g, X), adjoint_group(L, g, Y)) - kappa_pair(L, X, Y));
               return std::max(inf, grp);
             });
           }},
          {"exp-ad-consistency", 1e-9, [](Ctx& c) {
             const LieAlgebra& L = *c.L();
             return c.per_sample(kAlgebraSamples, "algebra/exp-ad", [&](Rng& r) {
               const Eigen::VectorXd X = random_algebra_element(L, r, 2.0);
               const Eigen::MatrixXd lhs = adjoint_group_matrix(L, exp_elem(L, X));
               const Eigen::MatrixXd rhs = adjoint_algebra(L, X).exp();
               return (lhs - rhs).norm();
             });
           }},
          {"exp-closed-vs-series", 1e-12, [](Ctx& c) {
             const LieAlgebra& L = *c.L();
             return c.per_sample(kAlgebraSamples, "algebra/exp-series", [&](Rng& r) {
               const Eigen::VectorXd X = random_algebra_element(L, r, 2.0);
               const GroupElement g = exp_elem(L, X);
               return std::max((g.matrix() - exp_series(L, X).matrix()).norm(), variety_residual(L, g.matrix()));
             });
           }},
      }};
}

SuiteDef forms_suite() {
  return {"forms",
          "d∘d = 0, exact derivative agrees with differences, ** = ±1",
          {
              {"d-squared", 1e-10, [](Ctx& c) {
                 const LieForm& A = c.scenario().A;
                 const LieForm dd = exterior_derivative(exterior_derivative(A));
                 const LieForm w = exterior_derivative(exterior_derivative(c.lgb().omega));
                 return c.per_point("forms/dd", [&](std::size_t, const Point& x, Rng&) {
                   return std::max(colmax(dd(x)), colmax(w(x)));
                 });
               },
               [](const Ctx& c) { return c.n() >= 3 && c.scenario().A.has_analytic_d(); }},
              {"fd-vs-exact-d", 1e-7, [](Ctx& c) {
                 const LieForm& A = c.scenario().A;
                 const LieForm exact = exterior_derivative(A);
                 const LieForm fd = exterior_derivative(A.without_analytic_d());
                 return c.per_point("forms/fd", [&](std::size_t, const Point& x, Rng&) {
                   return colmax(exact(x) - fd(x));
                 });
               },
               [](const Ctx& c) { return c.scenario().A.has_analytic_d(); }},
              {"double-star", 1e-10, [](Ctx& c) {
                 const LieForm F = field_strength(c.scenario().nabla, c.scenario().zeta, c.scenario().A);
                 const LieForm& A = c.scenario().A;
                 const LieForm ssF = hodge_star(hodge_star(F)), ssA = hodge_star(hodge_star(A));
                 const int n = c.n();
                 return c.per_point("forms/star", [&](std::size_t, const Point& x, Rng&) {
                   const double s = c.chart()->metric(x).determinant() < 0 ? -1.0 : 1.0;
                   const double sign2 = ((2 * (n - 2)) % 2 ? -1.0 : 1.0) * s;
                   const double sign1 = (((n - 1)) % 2 ? -1.0 : 1.0) * s;
                   return std::max(colmax(ssF(x) - sign2 * F(x)), colmax(ssA(x) - sign1 * A(x)));
                 });
               },
               [](const Ctx& c) { return c.n() >= 2; }},
          }};
}

SuiteDef compatibility_suite() {
  return {"compatibility",
          "Γ acts by derivations of the bracket and R_∇ = ad_ζ",
          {
              {"derivation", 1e-7, [](Ctx& c) {
                 return check_compatibility(c.scenario().nabla, c.scenario().zeta, c.points()).derivation_per_point;
               }},
              {"curvature", 1e-7, [](Ctx& c) {
                 return check_compatibility(c.scenario().nabla, c.scenario().zeta, c.points()).curvature_per_point;
               }},
              {"covariant-square", 1e-8, [](Ctx& c) {
                 Rng r = c.rng("compat/nu");
                 const LieForm nu = c.random_form(r, 0, 1.0);
                 const LabConnection& nabla = c.scenario().nabla;
                 const LieForm lhs = cov_ext_deriv(nabla, cov_ext_deriv(nabla, nu));
                 const LieForm rhs = graded_product(Pairing::end_action(c.dim()), curvature(nabla).R, nu);
                 return c.per_point("compat/sq", [&](std::size_t, const Point& x, Rng&) { return colmax(lhs(x) - rhs(x)); });
               },
               [](const Ctx& c) { return c.n() >= 2 && c.scenario().nabla.gamma().has_analytic_d(); }},
          }};
}

SuiteDef multiplicativity_suite() {
  return {"multiplicativity",
          "the total Maurer-Cartan form of an LGB connection is multiplicative",
          {
              {"mu-tot", 1e-9, [](Ctx& c) {
                 return c.per_point("mult/mu", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const MultiplicativitySample s{x,
                                                    random_group_element(*c.L(), r),
                                                    random_group_element(*c.L(), r),
                                                    c.random_vector(r),
                                                    random_algebra_element(*c.L(), r, 1.0),
                                                    random_algebra_element(*c.L(), r, 1.0)};
                     worst = std::max(worst, multiplicativity_residual(c.lgb(), s));
                   }
                   return worst;
                 });
               }},
              {"perturbed-counterexample", 1e-2, [](Ctx& c) {
                 Rng r0 = c.rng("mult/rho");
                 const Eigen::MatrixXd rho_c = r0.uniform_vector(c.dim() * c.n(), 0.5, 1.0).reshaped(c.dim(), c.n());
                 const LieForm rho = constant_form(c.chart(), 1, ValueKind::Algebra, c.dim(), rho_c);
                 return c.per_point("mult/pert", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const MultiplicativitySample s{x,
                                                    random_group_element(*c.L(), r),
                                                    random_group_element(*c.L(), r),
                                                    r.uniform_vector(c.n(), 0.5, 1.0),
                                                    random_algebra_element(*c.L(), r, 1.0),
                                                    random_algebra_element(*c.L(), r, 1.0)};
                     worst = std::max(worst, multiplicativity_residual(c.lgb(), s, &rho));
                   }
                   return worst;
                 });
               },
               nullptr, true},
          }};
}

SuiteDef darboux_suite() {
  return {"darboux",
          "Darboux derivative obeys Δ(στ) = Ad_{τ⁻¹}Δσ + Δτ and Δ(σ⁻¹) = -Ad_σ Δσ",
          {
              {"leibniz", 1e-6, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, 2 * kSectionPairs, "darboux/sections");
                 return c.per_point("darboux/leibniz", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (std::size_t p = 0; p < kSectionPairs; ++p)
                     worst = std::max(worst, darboux_leibniz_residual(c.lgb(), secs[2 * p], secs[2 * p + 1], x));
                   return worst;
                 });
               }},
              {"inverse", 1e-6, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, 2 * kSectionPairs, "darboux/sections");
                 return c.per_point("darboux/inverse", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (const auto& s : secs) worst = std::max(worst, darboux_inverse_residual(c.lgb(), s, x));
                   return worst;
                 });
               }},
              {"identity-section", 0.0, [](Ctx& c) {
                 const LieForm D = darboux(c.lgb(), identity_section(c.L()));
                 return c.per_point("darboux/id", [&](std::size_t, const Point& x, Rng&) { return colmax(D(x)); });
               }},
              {"conjugated-connection", 1e-6, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "darboux/conj");
                 return c.per_point("darboux/conj", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (const auto& s : secs) worst = std::max(worst, conjugated_connection_residual(c.lgb(), s, x));
                   return worst;
                 });
               }},
          }};
}

SuiteDef nabla_suite() {
  return {"nabla-from-darboux",
          "∇_X ν = d/dt Δ(exp(tν))(X) at t = 0, i.e. dν(X) + [ω(X), ν]",
          {
              {"t-derivative", 1e-6, [](Ctx& c) {
                 Rng r0 = c.rng("nabla/nu");
                 const LieForm nu = c.random_form(r0, 0, 1.0);
                 return c.per_point("nabla/x", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k)
                     worst = std::max(worst, nabla_from_darboux(c.lgb(), nu, x, c.random_vector(r), 1e-5, kInf).residual);
                   return worst;
                 });
               }},
          }};
}

SuiteDef generalized_mc_suite() {
  return {"generalized-mc",
          "generalized Maurer-Cartan equation dμ + ½[μ∧μ] = (Ad_{g⁻¹} - id)ζ on the total space",
          {
              {"total-space", 1e-5, [](Ctx& c) {
                 return c.per_point("gmc/total", [&](std::size_t, const Point& x, Rng& r) {
                   return generalized_mc_residual(c.lgb(), c.scenario().zeta, x, random_group_element(*c.L(), r));
                 });
               }},
              {"pullback", 1e-4, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "gmc/sections");
                 std::vector<LieForm> forms;
                 for (const auto& s : secs) forms.push_back(pullback_mc_form(c.lgb(), s, c.scenario().zeta));
                 return c.per_point("gmc/pullback", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (const auto& f : forms) worst = std::max(worst, colmax(f(x)));
                   return worst;
                 });
               },
               [](const Ctx& c) { return c.n() >= 2; }},
          }};
}

SuiteDef principal_suite() {
  return {"principal",
          "connection 1-form is Ad-equivariant under the modified right action with horizontal kernel",
          {
              {"action-differential", 1e-7, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "principal/sections");
                 return c.per_point("principal/action", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (const auto& s : secs) {
                     const GroupElement h = random_group_element(*c.L(), r);
                     const PTangent t = c.random_tangent(r);
                     worst = std::max(worst, action_differential_residual(c.P(), x, h, s, t,
                                                                          random_algebra_element(*c.L(), r, 1.0)));
                   }
                   return worst;
                 });
               }},
              {"section-independence", 1e-8, [](Ctx& c) {
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "principal/sections");
                 return c.per_point("principal/indep", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (const auto& s : secs) {
                     // second section through the same group element: s * exp(M (y - x))
                     PolyForm phi(c.n(), 0, ValueKind::Algebra, c.dim());
                     const Eigen::MatrixXd M = r.uniform_vector(c.dim() * c.n(), -1.0, 1.0).reshaped(c.dim(), c.n());
                     phi.add({}, {-(M * x), std::vector<int>(static_cast<std::size_t>(c.n()), 0), 0.0});
                     for (int i = 0; i < c.n(); ++i) {
                       std::vector<int> e(static_cast<std::size_t>(c.n()), 0);
                       e[static_cast<std::size_t>(i)] = 1;
                       phi.add({}, {M.col(i), e, 0.0});
                     }
                     const SectionPtr s2 = product_section(s, exp_section(c.L(), to_lie_form(c.chart(), phi)));
                     worst = std::max(worst, section_independence_residual(c.P(), x, random_group_element(*c.L(), r), s,
                                                                           s2, c.random_tangent(r), kInf));
                   }
                   return worst;
                 });
               }},
              {"equivariance", 1e-8, [](Ctx& c) {
                 return c.per_point("principal/equiv", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const GroupElement h = random_group_element(*c.L(), r), g = random_group_element(*c.L(), r);
                     worst = std::max(worst, equivariance_residual(c.P(), x, h, g, c.random_tangent(r)));
                   }
                   return worst;
                 });
               }},
              {"kernel-invariance", 1e-8, [](Ctx& c) {
                 return c.per_point("principal/kernel", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const GroupElement h = random_group_element(*c.L(), r), g = random_group_element(*c.L(), r);
                     worst = std::max(worst, kernel_invariance_residual(c.P(), x, h, g, c.random_vector(r)));
                   }
                   return worst;
                 });
               }},
              {"projection-commutation", 1e-8, [](Ctx& c) {
                 return c.per_point("principal/proj", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const GroupElement h = random_group_element(*c.L(), r), g = random_group_element(*c.L(), r);
                     worst = std::max(worst, projection_commutation_residual(c.P(), x, h, g, c.random_tangent(r)));
                   }
                   return worst;
                 });
               }},
              {"vertical-reproduction", 1e-12, [](Ctx& c) {
                 return c.per_point("principal/vert", [&](std::size_t, const Point& x, Rng& r) {
                   const GroupElement h = random_group_element(*c.L(), r);
                   const Eigen::VectorXd V = random_algebra_element(*c.L(), r, 1.0);
                   const double vert = (connection_one_form(c.P(), x, h, {Vector::Zero(c.n()), V}) - V).norm();
                   const double lift = connection_one_form(c.P(), x, h, horizontal_lift(c.P(), x, h, c.random_vector(r))).norm();
                   return std::max(vert, lift);
                 });
               }},
              {"pushforward-rank", 0.5, [](Ctx& c) {
                 return c.per_point("principal/rank", [&](std::size_t, const Point& x, Rng& r) {
                   return static_cast<double>(std::abs(c.n() + c.dim() -
                                                       pushforward_rank(c.P(), x, random_group_element(*c.L(), r))));
                 });
               }},
              {"mixed-bracket", 1e-4, [](Ctx& c) {
                 Rng r0 = c.rng("principal/nu");
                 const LieForm nu = c.random_form(r0, 0, 1.0);
                 return c.per_point("principal/bracket", [&](std::size_t, const Point& x, Rng& r) {
                   return mixed_bracket_residual(c.P(), x, random_group_element(*c.L(), r), c.random_vector(r), nu);
                 });
               }},
          }};
}

SuiteDef field_strength_suite() {
  return {"field-strength",
          "structure equation F = d^∇A(hor, hor) + π^!ζ; F is horizontal and of Ad-type",
          {
              {"structure-equation", 1e-6, [](Ctx& c) {
                 return c.per_point("fs/structure", [&](std::size_t, const Point& x, Rng& r) {
                   const GroupElement h = random_group_element(*c.L(), r);
                   const FieldStrengthAt F(c.P(), c.scenario().zeta, x, h);
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const PTangent t1 = c.random_tangent(r), t2 = c.random_tangent(r);
                     worst = std::max(worst, (F.direct(t1, t2) - F.structure(t1, t2)).norm());
                   }
                   return worst;
                 });
               }},
              {"horizontality-projector", 0.0, [](Ctx& c) {
                 return c.per_point("fs/hor", [&](std::size_t, const Point& x, Rng& r) {
                   const GroupElement h = random_group_element(*c.L(), r);
                   const FieldStrengthAt F(c.P(), c.scenario().zeta, x, h);
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const PTangent v{Vector::Zero(c.n()), random_algebra_element(*c.L(), r, 1.0)};
                     worst = std::max(worst, F.structure(v, c.random_tangent(r)).norm());
                   }
                   return worst;
                 });
               }},
              {"horizontality-direct", 1e-6, [](Ctx& c) {
                 return c.per_point("fs/hor", [&](std::size_t, const Point& x, Rng& r) {
                   const GroupElement h = random_group_element(*c.L(), r);
                   const FieldStrengthAt F(c.P(), c.scenario().zeta, x, h);
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const PTangent v{Vector::Zero(c.n()), random_algebra_element(*c.L(), r, 1.0)};
                     worst = std::max(worst, F.direct(v, c.random_tangent(r)).norm());
                   }
                   return worst;
                 });
               }},
              {"ad-type", 1e-6, [](Ctx& c) {
                 return c.per_point("fs/ad", [&](std::size_t, const Point& x, Rng& r) {
                   const GroupElement h = random_group_element(*c.L(), r), g = random_group_element(*c.L(), r);
                   const FieldStrengthAt Fh(c.P(), c.scenario().zeta, x, h), Fhg(c.P(), c.scenario().zeta, x, h * g);
                   double worst = 0.0;
                   for (int k = 0; k < c.probes(); ++k) {
                     const PTangent t1 = c.random_tangent(r), t2 = c.random_tangent(r);
                     const Eigen::VectorXd lhs =
                         Fhg.direct(modified_pushforward(c.P(), x, g, t1), modified_pushforward(c.P(), x, g, t2));
                     const Eigen::VectorXd rhs = adjoint_group(*c.L(), g.inverse(), Fh.direct(t1, t2));
                     worst = std::max(worst, (lhs - rhs).norm());
                   }
                   return worst;
                 });
               }},
              {"identity-gauge", 1e-6, [](Ctx& c) {
                 const LieForm Floc = field_strength(c.scenario().nabla, c.scenario().zeta, c.scenario().A);
                 const auto& pairs = MultiIndexSet::get(c.n(), 2);
                 return c.per_point("fs/id", [&](std::size_t, const Point& x, Rng&) {
                   const FieldStrengthAt F(c.P(), c.scenario().zeta, x, GroupElement::identity(*c.L()));
                   const Eigen::MatrixXd loc = Floc(x);
                   const Eigen::VectorXd zero = Eigen::VectorXd::Zero(c.dim());
                   double worst = 0.0;
                   for (int p = 0; p < pairs.size(); ++p) {
                     const PTangent t1{Vector::Unit(c.n(), pairs[p][0]), zero}, t2{Vector::Unit(c.n(), pairs[p][1]), zero};
                     worst = std::max(worst, (F.direct(t1, t2) - loc.col(p)).norm());
                   }
                   return worst;
                 });
               },
               [](const Ctx& c) { return c.n() >= 2; }},
          }};
}

SuiteDef gauge_transform_suite() {
  return {"gauge-transform",
          "gauge transformations act by A ↦ Ad_{σ⁻¹}A + Δσ and F ↦ Ad_{σ⁻¹}F",
          {
              {"total-space-A", 1e-5, [](Ctx& c) {
                 const auto taus = c.sections(c.scenario().automorphisms, kGaugeSections, "gauge/tau");
                 return c.per_point("gauge/total", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (const auto& tau : taus) {
                     const auto chk = gauge_transform_total(c.P(), c.scenario().zeta, tau, x, random_group_element(*c.L(), r),
                                                            c.random_tangent(r), c.random_tangent(r));
                     worst = std::max(worst, chk.A_residual);
                   }
                   return worst;
                 });
               }},
              {"total-space-F", 1e-5, [](Ctx& c) {
                 const auto taus = c.sections(c.scenario().automorphisms, kGaugeSections, "gauge/tau");
                 return c.per_point("gauge/total", [&](std::size_t, const Point& x, Rng& r) {
                   double worst = 0.0;
                   for (const auto& tau : taus) {
                     const auto chk = gauge_transform_total(c.P(), c.scenario().zeta, tau, x, random_group_element(*c.L(), r),
                                                            c.random_tangent(r), c.random_tangent(r));
                     worst = std::max(worst, chk.F_residual);
                   }
                   return worst;
                 });
               }},
              {"change-of-gauge-A", 1e-5, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "gauge/sigma");
                 std::vector<ChangeOfGauge> cg;
                 for (const auto& s : secs) cg.push_back(change_of_gauge(S, s));
                 return c.per_point("gauge/local", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (std::size_t k = 0; k < secs.size(); ++k) {
                     // pullback of the total-space connection through x -> (x, σ(x))
                     const Eigen::MatrixXd A = cg[k].A(x);
                     const GroupElement g = secs[k]->value(x);
                     for (int i = 0; i < c.n(); ++i) {
                       const Vector X = Vector::Unit(c.n(), i);
                       const Eigen::VectorXd pulled =
                           connection_one_form(c.P(), x, g, {X, secs[k]->body_derivative(x, X)});
                       worst = std::max(worst, (A.col(i) - pulled).norm());
                     }
                   }
                   return worst;
                 });
               }},
              {"change-of-gauge-F", 1e-5, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "gauge/sigma");
                 std::vector<ChangeOfGauge> cg;
                 for (const auto& s : secs) cg.push_back(change_of_gauge(S, s));
                 return c.per_point("gauge/local", [&](std::size_t, const Point& x, Rng&) {
                   double worst = 0.0;
                   for (const auto& g : cg) worst = std::max(worst, change_of_gauge_residual(g, x));
                   return worst;
                 });
               },
               [](const Ctx& c) { return c.n() >= 2; }},
              {"infinitesimal", 1e-5, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 Rng r0 = c.rng("gauge/eps");
                 const LieForm eps = c.random_form(r0, 0, 1.0);
                 return c.per_point("gauge/inf", [&](std::size_t, const Point& x, Rng&) {
                   const InfinitesimalCheck chk = infinitesimal_gauge_check(S, eps, x);
                   return std::max(chk.A_residual, chk.F_residual);
                 });
               },
               [](const Ctx& c) { return c.n() >= 2; }},
          }};
}

SuiteDef bianchi_suite() {
  return {"bianchi",
          "generalized Bianchi identity d^∇F + [A∧F] = d^∇ζ",
          {
              {"exact-derivatives", 1e-7, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 return c.per_point("bianchi/exact", [&](std::size_t, const Point& x, Rng&) {
                   return bianchi_residual(S, x, true);
                 });
               },
               [](const Ctx& c) { return c.n() >= 3 && analytic_inputs(c); }},
              {"nested-differences", 1e-4, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 return c.per_point("bianchi/fd", [&](std::size_t, const Point& x, Rng&) {
                   return bianchi_residual(S, x, false);
                 });
               },
               [](const Ctx& c) { return c.n() >= 3; }},
          }};
}

SuiteDef redefinition_suite() {
  return {"field-redefinition",
          "the shift (A+λ, ∇-ad_λ, ζ-d^∇λ+½[λ∧λ]) preserves F and compatibility",
          {
              {"field-strength-invariance", 1e-6, [](Ctx& c) {
                 const Scenario& s = c.scenario();
                 const LieForm F = field_strength(s.nabla, s.zeta, s.A);
                 std::vector<LieForm> Fs;
                 for (std::size_t k = 0; k < kRedefinitions; ++k) {
                   Rng r = c.rng("redef/lambda", k);
                   const Redefinition R = field_redefine(s.nabla, s.zeta, s.A, c.random_form(r, 1, 1.0));
                   Fs.push_back(field_strength(R.nabla, R.zeta, R.A));
                 }
                 return c.per_point("redef/F", [&](std::size_t, const Point& x, Rng&) {
                   const Eigen::MatrixXd F0 = F(x);
                   double worst = 0.0;
                   for (const auto& f : Fs) worst = std::max(worst, colmax(f(x) - F0));
                   return worst;
                 });
               }},
              {"compatibility-closure", 1e-6, [](Ctx& c) {
                 const Scenario& s = c.scenario();
                 std::vector<double> worst(c.points().size(), 0.0);
                 for (std::size_t k = 0; k < kRedefinitions; ++k) {
                   Rng r = c.rng("redef/lambda", k);
                   const Redefinition R = field_redefine(s.nabla, s.zeta, s.A, c.random_form(r, 1, 1.0));
                   const CompatibilityReport rep = check_compatibility(R.nabla, R.zeta, c.points());
                   for (std::size_t i = 0; i < worst.size(); ++i)
                     worst[i] = std::max({worst[i], rep.derivation_per_point[i], rep.curvature_per_point[i]});
                 }
                 return worst;
               }},
              {"flattening", 1e-10, [](Ctx& c) {
                 // ∇ - ad_λ with λ = ω removes the connection form entirely
                 const Scenario& s = c.scenario();
                 const Redefinition R = field_redefine(s.nabla, s.zeta, s.A, *s.nabla.omega());
                 return c.per_point("redef/flat", [&](std::size_t, const Point& x, Rng&) {
                   return colmax(R.nabla.gamma()(x));
                 });
               },
               [](const Ctx& c) { return c.scenario().nabla.omega().has_value(); }},
          }};
}

SuiteDef lagrangian_suite() {
  return {"lagrangian",
          "the density -½κ(F∧*F) is gauge invariant",
          {
              {"gauge-invariance", 1e-6, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 const auto L0 = lagrangian_density(S);
                 const auto secs = c.sections(c.scenario().sections, kGaugeSections, "lagrangian/sigma");
                 std::vector<std::function<std::optional<double>(const Point&)>> Ls;
                 for (const auto& s : secs) Ls.push_back(lagrangian_density(S.algebra(), change_of_gauge(S, s).F));
                 return c.per_point("lagrangian/inv", [&](std::size_t, const Point& x, Rng&) {
                   const auto l0 = L0(x);
                   if (!l0) return 0.0;
                   double worst = 0.0;
                   for (const auto& L : Ls)
                     if (const auto l = L(x)) worst = std::max(worst, std::abs(*l - *l0));
                   return worst;
                 });
               },
               four_dim},
              {"infinitesimal-invariance", 1e-5, [](Ctx& c) {
                 const GaugeScenario& S = c.gauge();
                 Rng r0 = c.rng("lagrangian/eps");
                 const LieForm eps = c.random_form(r0, 0, 1.0);
                 const double t = 1e-4;
                 const auto Lp = lagrangian_density(S.algebra(), change_of_gauge(S, exp_section(S.algebra(), t * eps)).F);
                 const auto Lm = lagrangian_density(S.algebra(), change_of_gauge(S, exp_section(S.algebra(), -t * eps)).F);
                 return c.per_point("lagrangian/inf", [&](std::size_t, const Point& x, Rng&) {
                   const auto p = Lp(x), m = Lm(x);
                   if (!p || !m) return 0.0;
                   return std::abs(*p - *m) / (2.0 * t);
                 });
               },
               four_dim},
          }};
}

SuiteDef topology_suite() {
  return {"topology",
          "self-dual ζ = F_ω on S⁴ with R_∇ = ad_ζ and unit instanton number",
          {
              {"self-duality", 1e-6, [](Ctx& c) {
                 const LieForm& z = c.scenario().zeta;
                 const LieForm sz = hodge_star(z);
                 return c.per_point("topology/sd", [&](std::size_t, const Point& x, Rng&) { return colmax(sz(x) - z(x)); });
               },
               topological},
              {"curvature-is-ad-zeta", 1e-6, [](Ctx& c) {
                 return check_compatibility(c.scenario().nabla, c.scenario().zeta, c.points()).curvature_per_point;
               },
               topological},
              {"nonflat-at-origin", 1.0, [](Ctx& c) {
                 const LieForm Fw = curvature_of_potential(c.L(), *c.scenario().nabla.omega());
                 const Eigen::MatrixXd F0 = Fw(Point::Zero(c.n()));
                 double k = 0.0;
                 for (Eigen::Index col = 0; col < F0.cols(); ++col) k += kappa_pair(*c.L(), F0.col(col), F0.col(col));
                 return std::vector<double>{std::sqrt(std::abs(k))};
               },
               topological, true},
              {"instanton-charge", 1e-2, [](Ctx& c) {
                 const ChargeResult q = instanton_charge(c.gauge(), c.scenario().quadrature);
                 return std::vector<double>{std::abs(q.charge - *c.scenario().expected_charge)};
               },
               topological},
          }};
}

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> suites{
      algebra_suite(),        forms_suite(),          compatibility_suite(),   multiplicativity_suite(),
      darboux_suite(),        nabla_suite(),          generalized_mc_suite(),  principal_suite(),
      field_strength_suite(), gauge_transform_suite(), bianchi_suite(),        redefinition_suite(),
      lagrangian_suite(),     topology_suite(),
  };
  return suites;
}

CheckResult run_check(Ctx& ctx, const SuiteDef& suite, const CheckDef& def, const RunOptions& opts) {
  CheckResult r;
  r.name = suite.name + "/" + def.name;
  r.anchor = suite.anchor;
  r.lower_bound = def.lower_bound;
  r.tolerance = def.tolerance;
  auto it = ctx.scenario().tolerances.find(r.name);
  if (it != ctx.scenario().tolerances.end()) r.tolerance = it->second;
  if (!def.lower_bound) r.tolerance *= opts.tol_scale;
  try {
    r.samples = def.run(ctx);
    if (r.samples.empty()) {
      r.residual = 0.0;
    } else if (def.lower_bound) {
      r.residual = *std::min_element(r.samples.begin(), r.samples.end());
    } else {
      r.residual = *std::max_element(r.samples.begin(), r.samples.end());
    }
    r.pass = def.lower_bound ? r.residual > r.tolerance : r.residual <= r.tolerance;
  } catch (const GateError& e) {
    r.residual = std::max(e.report().derivation_residual, e.report().curvature_residual);
    r.pass = false;
    r.note = e.what();
  } catch (const std::exception& e) {
    r.residual = kInf;
    r.pass = false;
    r.note = e.what();
  }
  if (std::isnan(r.residual)) r.pass = false;
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

const std::string& suite_anchor(const std::string& suite) {
  for (const auto& s : registry())
    if (s.name == suite) return s.anchor;
  throw InputError("unknown suite '" + suite + "'");
}

Report run_suite(const Scenario& s, const std::string& suite, const RunOptions& opts) {
  if (suite != "all") suite_anchor(suite);
  Ctx ctx(s);
  Report rep;
  rep.scenario = s.name;
  for (const auto& def : registry()) {
    if (suite != "all" && def.name != suite) continue;
    for (const auto& check : def.checks) {
      if (check.applies && !check.applies(ctx)) continue;
      rep.checks.push_back(run_check(ctx, def, check, opts));
    }
  }
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  const FdSettings& fd = s.chart->fd();
  rep.env = {{"seed", s.plan.seed},
             {"h", fd.h},
             {"h2", fd.h2},
             {"fd_order", fd.order},
             {"points", ctx.points().size()},
             {"sample_mode", s.plan.mode},
             {"tangent_probes", s.plan.tangent_probes},
             {"tol_scale", opts.tol_scale},
             {"metric", s.chart->metric_kind()},
             {"isa", kernels::isa_name(kernels::active_isa())}};
  return rep;
}

}  // namespace cym::harness
