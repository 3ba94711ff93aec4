#include "cym/algebra.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <sstream>

namespace cym {

namespace {

constexpr double kStructTol = 1e-12;

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a + 1 << "," << b + 1 << "," << c + 1 << ")";
  return os.str();
}

}  // namespace

JacobiDefect jacobi_defect(int dim, const std::vector<double>& c) {
  auto C = [&](int a, int b, int k) { return c[static_cast<std::size_t>((a * dim + b) * dim + k)]; };
  JacobiDefect worst{0.0, 0, 0, 0};
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int cc = 0; cc < dim; ++cc)
        for (int k = 0; k < dim; ++k) {
          double s = 0.0;
          for (int m = 0; m < dim; ++m)
            s += C(a, b, m) * C(m, cc, k) + C(b, cc, m) * C(m, a, k) + C(cc, a, m) * C(m, b, k);
          if (std::abs(s) > worst.residual) worst = {std::abs(s), a, b, cc};
        }
  return worst;
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<double> structure_constants,
                       std::vector<CMatrix> rep, Eigen::MatrixXd kappa, std::vector<bool> center_mask,
                       std::vector<Block> blocks)
    : name_(std::move(name)),
      dim_(static_cast<int>(rep.size())),
      labels_(std::move(labels)),
      c_(std::move(structure_constants)),
      rep_(std::move(rep)),
      kappa_(std::move(kappa)),
      center_(std::move(center_mask)),
      blocks_(std::move(blocks)) {
  const int d = dim_;
  if (d <= 0) throw InputError("algebra '" + name_ + "': dimension must be positive");
  rep_dim_ = static_cast<int>(rep_[0].rows());
  for (const auto& R : rep_)
    if (R.rows() != rep_dim_ || R.cols() != rep_dim_)
      throw InputError("algebra '" + name_ + "': representation matrices must share one square size");
  if (labels_.empty())
    for (int a = 0; a < d; ++a) labels_.push_back("e" + std::to_string(a + 1));
  if (static_cast<int>(labels_.size()) != d) throw InputError("algebra '" + name_ + "': label count != dim");
  if (c_.size() != static_cast<std::size_t>(d * d * d))
    throw InputError("algebra '" + name_ + "': structure constants must have shape dim x dim x dim");
  if (kappa_.rows() != d || kappa_.cols() != d) throw InputError("algebra '" + name_ + "': kappa must be dim x dim");
  if (static_cast<int>(center_.size()) != d) throw InputError("algebra '" + name_ + "': center mask length != dim");

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k)
        if (std::abs(c(a, b, k) + c(b, a, k)) > kStructTol)
          throw InputError("algebra '" + name_ + "': structure constants not antisymmetric at " + triple(a, b, k));

  const JacobiDefect jd = jacobi_defect(d, c_);
  if (jd.residual > kStructTol)
    throw InputError("algebra '" + name_ + "': Jacobi identity violated for triple " + triple(jd.a, jd.b, jd.c));

  Eigen::MatrixXd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram(a, b) = (rep_[static_cast<std::size_t>(a)].adjoint() * rep_[static_cast<std::size_t>(b)]).trace().real();
  Eigen::FullPivLU<Eigen::MatrixXd> glu(gram);
  if (glu.rank() < d) throw InputError("algebra '" + name_ + "': representation matrices are linearly dependent");
  gram_inv_ = glu.inverse();

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const auto& Ra = rep_[static_cast<std::size_t>(a)];
      const auto& Rb = rep_[static_cast<std::size_t>(b)];
      CMatrix diff = Ra * Rb - Rb * Ra;
      for (int k = 0; k < d; ++k) diff -= c(a, b, k) * rep_[static_cast<std::size_t>(k)];
      if (diff.norm() > kStructTol)
        throw InputError("algebra '" + name_ + "': representation commutator disagrees with structure constants at (" +
                         std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }

  if ((kappa_ - kappa_.transpose()).norm() > kStructTol) throw InputError("algebra '" + name_ + "': kappa not symmetric");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(kappa_);
  if (svd.singularValues().minCoeff() < 1e-12) throw InputError("algebra '" + name_ + "': kappa is degenerate");
  for (int z = 0; z < d; ++z)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += c(z, a, m) * kappa_(m, b) + kappa_(a, m) * c(z, b, m);
        if (std::abs(s) > kStructTol)
          throw InputError("algebra '" + name_ + "': kappa is not ad-invariant at " + triple(z, a, b));
      }

  for (int a = 0; a < d; ++a) {
    double n = 0.0;
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) n = std::max(n, std::abs(c(a, b, k)));
    const bool central = n == 0.0;
    if (central != center_[static_cast<std::size_t>(a)])
      throw InputError("algebra '" + name_ + "': center mask inconsistent at basis element " + std::to_string(a + 1));
  }

  unitary_ = true;
  for (const auto& R : rep_)
    if ((R + R.adjoint()).norm() > kStructTol) unitary_ = false;

  if (blocks_.empty()) blocks_.push_back({BlockKind::Generic, 0, d, 0, rep_dim_});
}

std::shared_ptr<const LieAlgebra> LieAlgebra::su2() {
  static const auto instance = [] {
    const std::complex<double> I(0.0, 1.0);
    CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    // e_a = sigma_a / (2i)
    std::vector<CMatrix> rep{s1 / (2.0 * I), s2 / (2.0 * I), s3 / (2.0 * I)};
    std::vector<double> c(27, 0.0);
    auto set = [&](int a, int b, int k, double v) { c[static_cast<std::size_t>((a * 3 + b) * 3 + k)] = v; };
    set(0, 1, 2, 1.0);
    set(1, 2, 0, 1.0);
    set(2, 0, 1, 1.0);
    set(1, 0, 2, -1.0);
    set(2, 1, 0, -1.0);
    set(0, 2, 1, -1.0);
    return std::make_shared<const LieAlgebra>("su2", std::vector<std::string>{"e1", "e2", "e3"}, c, rep,
                                              Eigen::MatrixXd::Identity(3, 3), std::vector<bool>{false, false, false},
                                              std::vector<Block>{{BlockKind::SU2, 0, 3, 0, 2}});
  }();
  return instance;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::u1() {
  static const auto instance = [] {
    CMatrix r(1, 1);
    r(0, 0) = std::complex<double>(0.0, 1.0);
    return std::make_shared<const LieAlgebra>("u1", std::vector<std::string>{"u"}, std::vector<double>{0.0},
                                              std::vector<CMatrix>{r}, Eigen::MatrixXd::Identity(1, 1),
                                              std::vector<bool>{true}, std::vector<Block>{{BlockKind::U1, 0, 1, 0, 1}});
  }();
  return instance;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::direct_sum(const LieAlgebra& A, const LieAlgebra& B) {
  const int da = A.dim(), db = B.dim(), d = da + db;
  const int ra = A.rep_dim(), rb = B.rep_dim(), r = ra + rb;
  std::vector<std::string> labels = A.labels();
  for (const auto& l : B.labels()) labels.push_back(l);
  std::vector<double> c(static_cast<std::size_t>(d * d * d), 0.0);
  auto at = [&](int a, int b, int k) -> double& { return c[static_cast<std::size_t>((a * d + b) * d + k)]; };
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < da; ++b)
      for (int k = 0; k < da; ++k) at(a, b, k) = A.c(a, b, k);
  for (int a = 0; a < db; ++a)
    for (int b = 0; b < db; ++b)
      for (int k = 0; k < db; ++k) at(da + a, da + b, da + k) = B.c(a, b, k);
  std::vector<CMatrix> rep;
  for (const auto& R : A.rep()) {
    CMatrix M = CMatrix::Zero(r, r);
    M.topLeftCorner(ra, ra) = R;
    rep.push_back(M);
  }
  for (const auto& R : B.rep()) {
    CMatrix M = CMatrix::Zero(r, r);
    M.bottomRightCorner(rb, rb) = R;
    rep.push_back(M);
  }
  Eigen::MatrixXd kappa = Eigen::MatrixXd::Zero(d, d);
  kappa.topLeftCorner(da, da) = A.kappa();
  kappa.bottomRightCorner(db, db) = B.kappa();
  std::vector<bool> center = A.center_mask();
  for (bool z : B.center_mask()) center.push_back(z);
  std::vector<Block> blocks = A.blocks();
  for (Block bl : B.blocks()) {
    bl.basis_offset += da;
    bl.rep_offset += ra;
    blocks.push_back(bl);
  }
  return std::make_shared<const LieAlgebra>(A.name() + "+" + B.name(), labels, c, rep, kappa, center, blocks);
}

std::shared_ptr<const LieAlgebra> LieAlgebra::builtin(const std::string& name) {
  if (name == "su2") return su2();
  if (name == "u1") return u1();
  if (name == "u1+su2") {
    static const auto instance = direct_sum(*u1(), *su2());
    return instance;
  }
  throw InputError("unknown built-in algebra '" + name + "'");
}

CMatrix LieAlgebra::to_matrix(const Eigen::VectorXd& X) const {
  require(X.size() == dim_, "algebra element has wrong dimension");
  CMatrix M = CMatrix::Zero(rep_dim_, rep_dim_);
  for (int a = 0; a < dim_; ++a)
    if (X[a] != 0.0) M += X[a] * rep_[static_cast<std::size_t>(a)];
  return M;
}

Eigen::VectorXd LieAlgebra::from_matrix(const CMatrix& M, double tol) const {
  require(M.rows() == rep_dim_ && M.cols() == rep_dim_, "matrix has wrong representation size");
  Eigen::VectorXd rhs(dim_);
  for (int a = 0; a < dim_; ++a) rhs[a] = (rep_[static_cast<std::size_t>(a)].adjoint() * M).trace().real();
  Eigen::VectorXd x = gram_inv_ * rhs;
  if (tol >= 0.0) {
    const double res = (M - to_matrix(x)).norm() / std::max(1.0, M.norm());
    if (res > tol)
      throw RepresentationError("matrix lies outside the represented algebra (relative residual " +
                                std::to_string(res) + ")");
  }
  return x;
}

double LieAlgebra::span_residual(const CMatrix& M) const {
  return (M - to_matrix(from_matrix(M, -1.0))).norm() / std::max(1.0, M.norm());
}

GroupElement::GroupElement(const LieAlgebra& L, CMatrix m, double tol) : m_(std::move(m)) {
  require(m_.rows() == L.rep_dim() && m_.cols() == L.rep_dim(), "group element has wrong representation size");
  const double r = variety_residual(L, m_);
  if (r > tol) throw VarietyError("matrix is not in the group (residual " + std::to_string(r) + ")");
}

GroupElement GroupElement::inverse() const { return trusted(m_.inverse()); }

double variety_residual(const LieAlgebra& L, const CMatrix& m) {
  const int r = L.rep_dim();
  double res = 0.0;
  if (L.unitary()) res = std::max(res, (m.adjoint() * m - CMatrix::Identity(r, r)).norm());
  // block-diagonal structure and special-unitary blocks
  for (const auto& b : L.blocks()) {
    for (int i = 0; i < r; ++i)
      for (int j = b.rep_offset; j < b.rep_offset + b.rep_dim; ++j)
        if (i < b.rep_offset || i >= b.rep_offset + b.rep_dim) res = std::max(res, std::abs(m(i, j)));
    if (b.kind == LieAlgebra::BlockKind::SU2)
      res = std::max(res, std::abs(m.block(b.rep_offset, b.rep_offset, 2, 2).determinant() - 1.0));
  }
  if (!L.unitary() && std::abs(m.determinant()) < 1e-12) res = std::max(res, 1.0);
  return res;
}

Eigen::VectorXd bracket(const LieAlgebra& L, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const int d = L.dim();
  require(X.size() == d && Y.size() == d, "bracket: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int a = 0; a < d; ++a) {
    if (X[a] == 0.0) continue;
    for (int b = 0; b < d; ++b) {
      const double xy = X[a] * Y[b];
      if (xy == 0.0) continue;
      for (int k = 0; k < d; ++k) out[k] += L.c(a, b, k) * xy;
    }
  }
  return out;
}

GroupElement exp_series(const LieAlgebra& L, const Eigen::VectorXd& X) {
  return GroupElement::trusted(L.to_matrix(X).exp());
}

GroupElement exp_elem(const LieAlgebra& L, const Eigen::VectorXd& X) {
  require(X.size() == L.dim(), "exp: dimension mismatch");
  const std::complex<double> I(0.0, 1.0);
  CMatrix out = CMatrix::Zero(L.rep_dim(), L.rep_dim());
  for (const auto& b : L.blocks()) {
    switch (b.kind) {
      case LieAlgebra::BlockKind::U1: {
        out(b.rep_offset, b.rep_offset) = std::exp(L.to_matrix(X)(b.rep_offset, b.rep_offset));
        break;
      }
      case LieAlgebra::BlockKind::SU2: {
        // exp(x.e) = cos(|x|/2) I - i sin(|x|/2) x^.sigma
        const Eigen::Vector3d x = X.segment(b.basis_offset, 3);
        const double t = x.norm();
        const double c = std::cos(0.5 * t);
        const double s = t > 0 ? std::sin(0.5 * t) / t : 0.5;
        auto B = out.block(b.rep_offset, b.rep_offset, 2, 2);
        B(0, 0) = c - I * s * x[2];
        B(1, 1) = c + I * s * x[2];
        B(0, 1) = -I * s * x[0] - s * x[1];
        B(1, 0) = -I * s * x[0] + s * x[1];
        break;
      }
      case LieAlgebra::BlockKind::Generic: {
        const CMatrix M = L.to_matrix(X).block(b.rep_offset, b.rep_offset, b.rep_dim, b.rep_dim);
        out.block(b.rep_offset, b.rep_offset, b.rep_dim, b.rep_dim) = M.exp();
        break;
      }
    }
  }
  return GroupElement::trusted(out);
}

Eigen::MatrixXd adjoint_group_matrix(const LieAlgebra& L, const GroupElement& g) {
  const CMatrix& m = g.matrix();
  const CMatrix mi = L.unitary() ? CMatrix(m.adjoint()) : CMatrix(m.inverse());
  Eigen::MatrixXd out(L.dim(), L.dim());
  for (int b = 0; b < L.dim(); ++b) out.col(b) = L.from_matrix(m * L.rep()[static_cast<std::size_t>(b)] * mi);
  return out;
}

Eigen::VectorXd adjoint_group(const LieAlgebra& L, const GroupElement& g, const Eigen::VectorXd& X) {
  const CMatrix& m = g.matrix();
  const CMatrix mi = L.unitary() ? CMatrix(m.adjoint()) : CMatrix(m.inverse());
  return L.from_matrix(m * L.to_matrix(X) * mi);
}

Eigen::MatrixXd adjoint_algebra(const LieAlgebra& L, const Eigen::VectorXd& X) {
  const int d = L.dim();
  require(X.size() == d, "ad: dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    if (X[a] == 0.0) continue;
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) out(k, b) += X[a] * L.c(a, b, k);
  }
  return out;
}

double kappa_pair(const LieAlgebra& L, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  require(X.size() == L.dim() && Y.size() == L.dim(), "kappa: dimension mismatch");
  return X.dot(L.kappa() * Y);
}

Eigen::MatrixXd dexp_matrix(const LieAlgebra& L, const Eigen::VectorXd& v) {
  const int d = L.dim();
  const Eigen::MatrixXd ad = adjoint_algebra(L, v);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k < 200; ++k) {
    term = (-1.0 / (k + 1)) * (ad * term);
    sum += term;
    if (term.lpNorm<Eigen::Infinity>() < 1e-18 * std::max(1.0, sum.lpNorm<Eigen::Infinity>())) break;
  }
  return sum;
}

}  // namespace cym
