#include "cym/lgb.hpp"

#include "cym/fd.hpp"

#include <cmath>

namespace cym {

TrivLgb::TrivLgb(ChartPtr chart_, AlgebraPtr L_, LieForm omega_)
    : chart(std::move(chart_)), L(std::move(L_)), omega(std::move(omega_)) {
  require(omega.degree() == 1 && omega.kind() == ValueKind::Algebra, "ω must be an algebra-valued 1-form");
  require(omega.dim() == L->dim(), "ω has the wrong algebra dimension");
}

// ---------------------------------------------------------------- sections

Eigen::VectorXd GSection::body_derivative(const Point& x, const Vector& X) const {
  const CMatrix binv = value(x).inverse().matrix();
  const CMatrix Db = fd_curve([&](double s) { return value(x + s * X).matrix(); }, kCurveStep, kCurveOrder);
  try {
    return L_->from_matrix(binv * Db, 1e-8);
  } catch (const RepresentationError& e) {
    throw VarietyError(std::string("section derivative left the algebra: ") + e.what());
  }
}

namespace {

class ConstantSection final : public GSection {
 public:
  ConstantSection(AlgebraPtr L, GroupElement g) : GSection(std::move(L)), g_(std::move(g)) {}
  GroupElement value(const Point&) const override { return g_; }
  Eigen::VectorXd body_derivative(const Point&, const Vector&) const override {
    return Eigen::VectorXd::Zero(L_->dim());
  }
  int fd_depth() const override { return 0; }

 private:
  GroupElement g_;
};

class ExpSection final : public GSection {
 public:
  ExpSection(AlgebraPtr L, LieForm phi) : GSection(std::move(L)), phi_(std::move(phi)), dphi_(exterior_derivative(phi_)) {
    require(phi_.degree() == 0 && phi_.kind() == ValueKind::Algebra, "exp section needs an algebra-valued 0-form");
  }
  GroupElement value(const Point& x) const override { return exp_elem(*L_, phi_(x).col(0)); }
  Eigen::VectorXd body_derivative(const Point& x, const Vector& X) const override {
    const Eigen::VectorXd v = phi_(x).col(0);
    const Eigen::VectorXd dv = dphi_(x) * X;
    return dexp_matrix(*L_, v) * dv;
  }
  int fd_depth() const override { return dphi_.fd_depth(); }

 private:
  LieForm phi_;
  LieForm dphi_;
};

class ProductSection final : public GSection {
 public:
  ProductSection(SectionPtr a, SectionPtr b) : GSection(a->algebra()), a_(std::move(a)), b_(std::move(b)) {}
  GroupElement value(const Point& x) const override { return a_->value(x) * b_->value(x); }

 private:
  SectionPtr a_, b_;
};

class InverseSection final : public GSection {
 public:
  explicit InverseSection(SectionPtr a) : GSection(a->algebra()), a_(std::move(a)) {}
  GroupElement value(const Point& x) const override { return a_->value(x).inverse(); }

 private:
  SectionPtr a_;
};

class GenericSection final : public GSection {
 public:
  GenericSection(AlgebraPtr L, std::function<GroupElement(const Point&)> b) : GSection(std::move(L)), b_(std::move(b)) {}
  GroupElement value(const Point& x) const override { return b_(x); }

 private:
  std::function<GroupElement(const Point&)> b_;
};

}  // namespace

SectionPtr identity_section(const AlgebraPtr& L) { return constant_section(L, GroupElement::identity(*L)); }
SectionPtr constant_section(const AlgebraPtr& L, const GroupElement& g) { return std::make_shared<ConstantSection>(L, g); }
SectionPtr exp_section(const AlgebraPtr& L, const LieForm& phi) { return std::make_shared<ExpSection>(L, phi); }
SectionPtr product_section(const SectionPtr& a, const SectionPtr& b) { return std::make_shared<ProductSection>(a, b); }
SectionPtr inverse_section(const SectionPtr& a) { return std::make_shared<InverseSection>(a); }
SectionPtr generic_section(const AlgebraPtr& L, std::function<GroupElement(const Point&)> b) {
  return std::make_shared<GenericSection>(L, std::move(b));
}

// ---------------------------------------------------------------- Maurer-Cartan forms

Eigen::VectorXd mu_tot(const TrivLgb& L, const Point& x, const GroupElement& g, const Vector& X,
                       const Eigen::VectorXd& eta) {
  const Eigen::VectorXd w = L.omega(x) * X;
  return eta + adjoint_group(*L.L, g.inverse(), w) - w;
}

double multiplicativity_residual(const TrivLgb& L, const MultiplicativitySample& s, const LieForm* rho) {
  auto mu = [&](const GroupElement& g, const Eigen::VectorXd& eta) {
    Eigen::VectorXd m = mu_tot(L, s.x, g, s.X, eta);
    if (rho) m += adjoint_group(*L.L, g.inverse(), (*rho)(s.x) * s.X);
    return m;
  };
  const GroupElement gq = s.g * s.q;
  const Eigen::VectorXd body = adjoint_group(*L.L, s.q.inverse(), s.eta) + s.theta;
  const Eigen::VectorXd r = mu(gq, body) - adjoint_group(*L.L, s.q.inverse(), mu(s.g, s.eta)) - mu(s.q, s.theta);
  return r.norm();
}

LieForm darboux(const TrivLgb& L, const SectionPtr& sigma) {
  const int n = L.chart->n();
  const AlgebraPtr alg = L.L;
  const LieForm omega = L.omega;
  LieForm f(L.chart, 1, ValueKind::Algebra, alg->dim(), [alg, omega, sigma, n](const Point& x) {
    const GroupElement b = sigma->value(x);
    const Eigen::MatrixXd Ad = adjoint_group_matrix(*alg, b.inverse());
    const Eigen::MatrixXd w = omega(x);
    Eigen::MatrixXd out = Ad * w - w;
    for (int i = 0; i < n; ++i) out.col(i) += sigma->body_derivative(x, Eigen::VectorXd::Unit(n, i));
    return out;
  });
  return f.with_fd_depth(std::max(sigma->fd_depth(), L.omega.fd_depth()));
}

double darboux_leibniz_residual(const TrivLgb& L, const SectionPtr& s, const SectionPtr& t, const Point& x) {
  const Eigen::MatrixXd lhs = darboux(L, product_section(s, t))(x);
  const Eigen::MatrixXd rhs = adjoint_group_matrix(*L.L, t->value(x).inverse()) * darboux(L, s)(x) + darboux(L, t)(x);
  return (lhs - rhs).colwise().norm().maxCoeff();
}

double darboux_inverse_residual(const TrivLgb& L, const SectionPtr& s, const Point& x) {
  const Eigen::MatrixXd lhs = darboux(L, inverse_section(s))(x);
  const Eigen::MatrixXd rhs = -adjoint_group_matrix(*L.L, s->value(x)) * darboux(L, s)(x);
  return (lhs - rhs).colwise().norm().maxCoeff();
}

double conjugated_connection_residual(const TrivLgb& L, const SectionPtr& b, const Point& x) {
  const int n = L.chart->n(), d = L.L->dim();
  const Eigen::MatrixXd delta = darboux(L, b)(x);
  const Eigen::MatrixXd w = L.omega(x);
  const Eigen::MatrixXd AdInv = adjoint_group_matrix(*L.L, b->value(x).inverse());
  const Eigen::MatrixXd Ad = adjoint_group_matrix(*L.L, b->value(x));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i);
    std::function<Eigen::MatrixXd(double)> adb = [&](double s) {
      return adjoint_group_matrix(*L.L, b->value(x + s * ei));
    };
    const Eigen::MatrixXd dAd = fd_derivative(adb, kCurveStep, kCurveOrder);
    const Eigen::MatrixXd ad_w = adjoint_algebra(*L.L, w.col(i));
    // columns: Ad_{b^{-1}} (∂_i(Ad_b e_a) + [ω_i, Ad_b e_a]) - [ω_i, e_a] - [Δb_i, e_a]
    const Eigen::MatrixXd lhs = AdInv * (dAd + ad_w * Ad);
    const Eigen::MatrixXd rhs = ad_w + adjoint_algebra(*L.L, delta.col(i));
    worst = std::max(worst, (lhs - rhs).colwise().norm().maxCoeff());
  }
  (void)d;
  return worst;
}

NablaFromDarboux nabla_from_darboux(const TrivLgb& L, const LieForm& nu, const Point& x, const Vector& X,
                                    double t_step, double tol) {
  require(nu.degree() == 0 && nu.kind() == ValueKind::Algebra, "ν must be an algebra-valued 0-form");
  std::function<Eigen::VectorXd(double)> delta = [&](double t) -> Eigen::VectorXd {
    return darboux(L, exp_section(L.L, t * nu))(x) * X;
  };
  NablaFromDarboux out;
  out.fd = fd_derivative(delta, t_step, 2);
  const Eigen::VectorXd v = nu(x).col(0);
  out.analytic = exterior_derivative(nu)(x) * X + bracket(*L.L, L.omega(x) * X, v);
  out.residual = (out.fd - out.analytic).norm();
  if (out.residual > tol)
    throw ConsistencyError("∇ from the Darboux derivative disagrees with dν + [ω, ν] (" + std::to_string(out.residual) +
                           ")");
  return out;
}

double generalized_mc_residual(const TrivLgb& L, const LieForm& zeta, const Point& x, const GroupElement& g) {
  const auto& alg = *L.L;
  const int n = L.chart->n(), d = alg.dim(), N = n + d;
  // μ in the coordinates z = (u, v): columns are μ(∂_{z_α})
  auto mu = [&](const Eigen::VectorXd& z) -> Eigen::MatrixXd {
    const Eigen::VectorXd u = z.head(n), v = z.tail(d);
    const GroupElement G = g * exp_elem(alg, v);
    const Eigen::MatrixXd w = L.omega(x + u);
    Eigen::MatrixXd out(d, N);
    out.leftCols(n) = adjoint_group_matrix(alg, G.inverse()) * w - w;
    out.rightCols(d) = dexp_matrix(alg, v);
    return out;
  };
  const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(N);
  const Eigen::MatrixXd m0 = mu(z0);
  const std::vector<Eigen::MatrixXd> D = fd_gradient(mu, z0, L.omega.fd().h, L.omega.fd().order);
  const Eigen::MatrixXd w0 = L.omega(x);
  const Eigen::MatrixXd Z = zeta(x);
  const Eigen::MatrixXd AdInv = adjoint_group_matrix(alg, g.inverse());
  const auto& pairs = MultiIndexSet::get(n, 2);
  double worst = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      Eigen::VectorXd r = D[static_cast<std::size_t>(a)].col(b) - D[static_cast<std::size_t>(b)].col(a) +
                          bracket(alg, m0.col(a), m0.col(b));
      // π*∇ has connection form ad_ω on base directions and vanishes on fibre directions
      if (a < n) r += bracket(alg, w0.col(a), m0.col(b));
      if (b < n) r -= bracket(alg, w0.col(b), m0.col(a));
      if (b < n) {
        const Eigen::VectorXd zab = Z.col(pairs.index_of({a, b}));
        r -= AdInv * zab - zab;
      }
      worst = std::max(worst, r.norm());
    }
  return worst;
}

LieForm conjugate_by_inverse(const AlgebraPtr& L, const SectionPtr& sigma, const LieForm& f) {
  require(f.kind() == ValueKind::Algebra, "conjugation acts on algebra-valued forms");
  return pointwise_linear(f, ValueKind::Algebra,
                          [L, sigma](const Point& x) { return adjoint_group_matrix(*L, sigma->value(x).inverse()); });
}

LieForm pullback_mc_form(const TrivLgb& L, const SectionPtr& sigma, const LieForm& zeta) {
  const LieForm delta = darboux(L, sigma);
  return cov_ext_deriv(L.nabla(), delta) + 0.5 * graded_product(Pairing::bracket(L.L), delta, delta) + zeta -
         conjugate_by_inverse(L.L, sigma, zeta);
}

double pullback_mc_residual(const TrivLgb& L, const SectionPtr& sigma, const LieForm& zeta, const Point& x) {
  return pullback_mc_form(L, sigma, zeta)(x).colwise().norm().maxCoeff();
}

}  // namespace cym
