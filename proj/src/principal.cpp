#include "cym/principal.hpp"

#include "cym/fd.hpp"

#include <cmath>

namespace cym {

TrivPrincipal::TrivPrincipal(TrivLgb lgb_, LieForm A_local_) : lgb(std::move(lgb_)), A_local(std::move(A_local_)) {
  require(A_local.degree() == 1 && A_local.kind() == ValueKind::Algebra, "A must be an algebra-valued 1-form");
  require(A_local.dim() == lgb.L->dim(), "A has the wrong algebra dimension");
}

Eigen::VectorXd PTangent::stacked() const {
  Eigen::VectorXd z(X.size() + V.size());
  z << X, V;
  return z;
}

PTangent PTangent::from_stacked(const Eigen::VectorXd& z, int n) {
  return {z.head(n), z.tail(z.size() - n)};
}

namespace {

/// Body coordinates at G0 of the velocity of a group-valued curve through G0.
Eigen::VectorXd curve_body(const LieAlgebra& L, const GroupElement& G0, const std::function<CMatrix(double)>& c) {
  const CMatrix dc = fd_curve(c, kCurveStep, kCurveOrder);
  return L.from_matrix(G0.inverse().matrix() * dc, 1e-8);
}

/// A on each coordinate direction at (y, H): columns for base directions, then fibre body directions.
Eigen::MatrixXd connection_matrix(const TrivPrincipal& P, const Point& y, const GroupElement& H) {
  const int n = P.n(), d = P.dim();
  const Eigen::MatrixXd w = P.lgb.omega(y);
  const Eigen::MatrixXd a = P.A_local(y);
  Eigen::MatrixXd out(d, n + d);
  out.leftCols(n) = adjoint_group_matrix(*P.algebra(), H.inverse()) * (a + w) - w;
  out.rightCols(d) = Eigen::MatrixXd::Identity(d, d);
  return out;
}

}  // namespace

Eigen::VectorXd connection_one_form(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t) {
  const Eigen::VectorXd w = P.lgb.omega(x) * t.X;
  const Eigen::VectorXd a = P.A_local(x) * t.X;
  const Eigen::MatrixXd AdInv = adjoint_group_matrix(*P.algebra(), h.inverse());
  return t.V + AdInv * a + (AdInv * w - w);
}

PTangent horizontal_projection(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t) {
  return {t.X, t.V - connection_one_form(P, x, h, t)};
}

PTangent vertical_projection(const TrivPrincipal& P, const Point& x, const GroupElement& h, const PTangent& t) {
  return {Vector::Zero(t.X.size()), connection_one_form(P, x, h, t)};
}

PTangent horizontal_lift(const TrivPrincipal& P, const Point& x, const GroupElement& h, const Vector& X) {
  return horizontal_projection(P, x, h, {X, Eigen::VectorXd::Zero(P.dim())});
}

PTangent modified_pushforward(const TrivPrincipal& P, const Point& x, const GroupElement& g, const PTangent& t) {
  const Eigen::MatrixXd AdInv = adjoint_group_matrix(*P.algebra(), g.inverse());
  const Eigen::VectorXd w = P.lgb.omega(x) * t.X;
  return {t.X, AdInv * t.V - (AdInv * w - w)};
}

PTangent modified_pushforward_via_section(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                          const SectionPtr& sigma, const PTangent& t) {
  const auto& L = *P.algebra();
  const GroupElement G0 = h * sigma->value(x);
  const Eigen::VectorXd Dr = curve_body(L, G0, [&](double s) {
    return CMatrix(h.matrix() * exp_elem(L, s * t.V).matrix() * sigma->value(x + s * t.X).matrix());
  });
  const Eigen::VectorXd delta = darboux(P.lgb, sigma)(x) * t.X;
  return {t.X, Dr - delta};
}

double section_independence_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                     const SectionPtr& s1, const SectionPtr& s2, const PTangent& t, double tol) {
  const GroupElement g = s1->value(x);
  const Eigen::VectorXd closed = modified_pushforward(P, x, g, t).V;
  const Eigen::VectorXd r1 = modified_pushforward_via_section(P, x, h, s1, t).V;
  const Eigen::VectorXd r2 = modified_pushforward_via_section(P, x, h, s2, t).V;
  const double res = std::max({(r1 - r2).norm(), (r1 - closed).norm(), (r2 - closed).norm()});
  if (res > tol)
    throw ConsistencyError("modified right-pushforward depends on the section (" + std::to_string(res) + ")");
  return res;
}

double action_differential_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                    const SectionPtr& sigma, const PTangent& t, const Eigen::VectorXd& W) {
  const auto& L = *P.algebra();
  const GroupElement g = sigma->value(x);
  const GroupElement hg = h * g;
  // direct: the curve (x + sX, h e^{sV}, g e^{sW}) pushed through the action
  const Eigen::VectorXd direct = curve_body(L, hg, [&](double s) {
    return CMatrix(h.matrix() * exp_elem(L, s * t.V).matrix() * g.matrix() * exp_elem(L, s * W).matrix());
  });
  // formula: D r_σ(X, V) plus the fundamental vector of μ_G(Y - Dσ(X))
  const Eigen::VectorXd Dr = curve_body(L, hg, [&](double s) {
    return CMatrix(h.matrix() * exp_elem(L, s * t.V).matrix() * sigma->value(x + s * t.X).matrix());
  });
  const Eigen::VectorXd formula = Dr + (W - sigma->body_derivative(x, t.X));
  return (direct - formula).norm();
}

double equivariance_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const GroupElement& g,
                             const PTangent& t) {
  const Eigen::VectorXd lhs = connection_one_form(P, x, h * g, modified_pushforward(P, x, g, t));
  const Eigen::VectorXd rhs = adjoint_group(*P.algebra(), g.inverse(), connection_one_form(P, x, h, t));
  return (lhs - rhs).norm();
}

double kernel_invariance_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const GroupElement& g,
                                  const Vector& X) {
  const PTangent t = horizontal_lift(P, x, h, X);
  const double in_kernel = connection_one_form(P, x, h, t).norm();
  const double pushed = connection_one_form(P, x, h * g, modified_pushforward(P, x, g, t)).norm();
  return std::max(in_kernel, pushed);
}

double projection_commutation_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h,
                                       const GroupElement& g, const PTangent& t) {
  const GroupElement hg = h * g;
  const PTangent a = modified_pushforward(P, x, g, horizontal_projection(P, x, h, t));
  const PTangent b = horizontal_projection(P, x, hg, modified_pushforward(P, x, g, t));
  const PTangent c = modified_pushforward(P, x, g, vertical_projection(P, x, h, t));
  const PTangent e = vertical_projection(P, x, hg, modified_pushforward(P, x, g, t));
  return std::max((a.stacked() - b.stacked()).norm(), (c.stacked() - e.stacked()).norm());
}

int pushforward_rank(const TrivPrincipal& P, const Point& x, const GroupElement& g) {
  const int N = P.n() + P.dim();
  Eigen::MatrixXd M(N, N);
  for (int j = 0; j < N; ++j)
    M.col(j) = modified_pushforward(P, x, g, PTangent::from_stacked(Eigen::VectorXd::Unit(N, j), P.n())).stacked();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

double mixed_bracket_residual(const TrivPrincipal& P, const Point& x, const GroupElement& h, const Vector& W,
                              const LieForm& nu) {
  const auto& L = *P.algebra();
  const int n = P.n(), d = P.dim(), N = n + d;
  require(nu.degree() == 0 && nu.kind() == ValueKind::Algebra, "ν must be an algebra-valued 0-form");
  // coordinate components of the fields in z = (u, v) -> (x + u, h e^v)
  auto lift = [&](const Eigen::VectorXd& z) -> Eigen::MatrixXd {
    const Eigen::VectorXd u = z.head(n), v = z.tail(d);
    const GroupElement H = h * exp_elem(L, v);
    const Eigen::MatrixXd Jinv = dexp_matrix(L, v).inverse();
    const PTangent t = horizontal_lift(P, x + u, H, W);
    Eigen::MatrixXd out(N, 1);
    out.col(0) << t.X, Jinv * t.V;
    return out;
  };
  auto fund = [&](const Eigen::VectorXd& z) -> Eigen::MatrixXd {
    const Eigen::VectorXd u = z.head(n), v = z.tail(d);
    const Eigen::MatrixXd Jinv = dexp_matrix(L, v).inverse();
    Eigen::MatrixXd out(N, 1);
    out.col(0) << Eigen::VectorXd::Zero(n), Jinv * nu(x + u).col(0);
    return out;
  };
  const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(N);
  const double step = nu.fd().h2;
  const auto DL = fd_gradient(lift, z0, step, 4);
  const auto DF = fd_gradient(fund, z0, step, 4);
  const Eigen::VectorXd Lz = lift(z0).col(0), Fz = fund(z0).col(0);
  Eigen::VectorXd br = Eigen::VectorXd::Zero(N);
  for (int b = 0; b < N; ++b) br += Lz[b] * DF[static_cast<std::size_t>(b)].col(0) - Fz[b] * DL[static_cast<std::size_t>(b)].col(0);
  const Eigen::VectorXd lhs = connection_one_form(P, x, h, PTangent::from_stacked(br, n));
  const Eigen::VectorXd expected =
      exterior_derivative(nu)(x) * W + bracket(L, P.lgb.omega(x) * W, nu(x).col(0));
  return (lhs - expected).norm();
}

// ---------------------------------------------------------------- field strength

FieldStrengthAt::FieldStrengthAt(const TrivPrincipal& P, const LieForm& zeta, const Point& x, const GroupElement& h)
    : n_(P.n()), d_(P.dim()), N_(P.n() + P.dim()) {
  const auto& L = *P.algebra();
  auto Acoord = [&](const Eigen::VectorXd& z) -> Eigen::MatrixXd {
    const Eigen::VectorXd u = z.head(n_), v = z.tail(d_);
    const GroupElement H = h * exp_elem(L, v);
    Eigen::MatrixXd M = connection_matrix(P, x + u, H);
    M.rightCols(d_) = dexp_matrix(L, v);
    return M;
  };
  const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(N_);
  A0_ = Acoord(z0);
  const FdSettings& fd = P.A_local.fd();
  const double step = std::max(P.A_local.fd_depth(), P.lgb.omega.fd_depth()) == 0 ? fd.h : fd.h2;
  const auto D = fd_gradient(Acoord, z0, step, fd.order);
  const Eigen::MatrixXd w = P.lgb.omega(x);
  const Eigen::MatrixXd Z = zeta(x);
  const auto& pairs = MultiIndexSet::get(n_, 2);
  for (int a = 0; a < N_; ++a)
    for (int b = a + 1; b < N_; ++b) {
      Eigen::VectorXd dA = D[static_cast<std::size_t>(a)].col(b) - D[static_cast<std::size_t>(b)].col(a);
      if (a < n_) dA += bracket(L, w.col(a), A0_.col(b));
      if (b < n_) dA -= bracket(L, w.col(b), A0_.col(a));
      Eigen::VectorXd F = dA + bracket(L, A0_.col(a), A0_.col(b));
      if (b < n_) {
        const Eigen::VectorXd zab = Z.col(pairs.index_of({a, b}));
        F += zab;
        dA += zab;  // π^!ζ belongs to both routes
      }
      full_.push_back(F);
      dA_.push_back(dA);
    }
}

Eigen::VectorXd FieldStrengthAt::contract(const std::vector<Eigen::VectorXd>& M, const Eigen::VectorXd& a,
                                          const Eigen::VectorXd& b) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
  std::size_t k = 0;
  for (int i = 0; i < N_; ++i)
    for (int j = i + 1; j < N_; ++j, ++k) {
      const double c = a[i] * b[j] - a[j] * b[i];
      if (c != 0.0) out += c * M[k];
    }
  return out;
}

Eigen::VectorXd FieldStrengthAt::direct(const PTangent& t1, const PTangent& t2) const {
  return contract(full_, t1.stacked(), t2.stacked());
}

Eigen::VectorXd FieldStrengthAt::structure(const PTangent& t1, const PTangent& t2) const {
  auto hor = [&](const PTangent& t) {
    Eigen::VectorXd z = t.stacked();
    z.tail(d_) -= A0_ * z;
    return z;
  };
  return contract(dA_, hor(t1), hor(t2));
}

// ---------------------------------------------------------------- gauge transformations

GroupElement conjugation_map(const SectionPtr& tau, const Point& x, const GroupElement& h) {
  return h.inverse() * tau->value(x) * h;
}

GaugeTransformCheck gauge_transform_total(const TrivPrincipal& P, const LieForm& zeta, const SectionPtr& tau,
                                          const Point& x, const GroupElement& h, const PTangent& t1,
                                          const PTangent& t2) {
  const auto& L = *P.algebra();
  const GroupElement th = tau->value(x) * h;
  const GroupElement sH = conjugation_map(tau, x, h);
  const Eigen::MatrixXd AdInvS = adjoint_group_matrix(L, sH.inverse());
  auto DH = [&](const PTangent& t) {
    const Eigen::VectorXd body = curve_body(L, th, [&](double s) {
      return CMatrix(tau->value(x + s * t.X).matrix() * h.matrix() * exp_elem(L, s * t.V).matrix());
    });
    return PTangent{t.X, body};
  };
  auto pi_darboux = [&](const PTangent& t) {
    const Eigen::VectorXd body = curve_body(L, sH, [&](double s) {
      return conjugation_map(tau, x + s * t.X, h * exp_elem(L, s * t.V)).matrix();
    });
    return mu_tot(P.lgb, x, sH, t.X, body);
  };
  const Eigen::VectorXd A_direct = connection_one_form(P, x, th, DH(t1));
  const Eigen::VectorXd A_formula = AdInvS * connection_one_form(P, x, h, t1) + pi_darboux(t1);
  const FieldStrengthAt F_at_p(P, zeta, x, h);
  const FieldStrengthAt F_at_Hp(P, zeta, x, th);
  const Eigen::VectorXd F_direct = F_at_Hp.direct(DH(t1), DH(t2));
  const Eigen::VectorXd F_formula = AdInvS * F_at_p.direct(t1, t2);
  return {(A_direct - A_formula).norm(), (F_direct - F_formula).norm()};
}

}  // namespace cym
