#pragma once

#include "cym/common.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cym {

using CMatrix = Eigen::MatrixXcd;

/// Fibre Lie algebra with a faithful matrix representation and an ad-invariant metric.
class LieAlgebra {
 public:
  /// Closed-form exponential is available for blocks tagged U1 or SU2.
  enum class BlockKind { U1, SU2, Generic };
  struct Block {
    BlockKind kind;
    int basis_offset;
    int basis_dim;
    int rep_offset;
    int rep_dim;
  };

  /// Validates every invariant eagerly; throws InputError naming the failure.
  LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<double> structure_constants,
             std::vector<CMatrix> rep, Eigen::MatrixXd kappa, std::vector<bool> center_mask,
             std::vector<Block> blocks = {});

  static std::shared_ptr<const LieAlgebra> su2();
  static std::shared_ptr<const LieAlgebra> u1();
  static std::shared_ptr<const LieAlgebra> direct_sum(const LieAlgebra& a, const LieAlgebra& b);
  /// "su2", "u1" or "u1+su2".
  static std::shared_ptr<const LieAlgebra> builtin(const std::string& name);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int rep_dim() const { return rep_dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double c(int a, int b, int k) const { return c_[static_cast<std::size_t>((a * dim_ + b) * dim_ + k)]; }
  const std::vector<double>& structure_constants() const { return c_; }
  const std::vector<CMatrix>& rep() const { return rep_; }
  const Eigen::MatrixXd& kappa() const { return kappa_; }
  const std::vector<bool>& center_mask() const { return center_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Representation matrices are anti-Hermitian, so the group is unitary.
  bool unitary() const { return unitary_; }

  /// Σ X^a rep_a.
  CMatrix to_matrix(const Eigen::VectorXd& X) const;
  /// Least-squares coefficients of M in the representation basis. Throws
  /// RepresentationError when the out-of-span part exceeds `tol` (relative).
  Eigen::VectorXd from_matrix(const CMatrix& M, double tol = 1e-10) const;
  /// Relative norm of the part of M outside the span of the representation.
  double span_residual(const CMatrix& M) const;

 private:
  std::string name_;
  int dim_;
  int rep_dim_;
  std::vector<std::string> labels_;
  std::vector<double> c_;
  std::vector<CMatrix> rep_;
  Eigen::MatrixXd kappa_;
  std::vector<bool> center_;
  std::vector<Block> blocks_;
  bool unitary_ = false;
  Eigen::MatrixXd gram_inv_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Group element in the representation. The checked constructor verifies group membership.
class GroupElement {
 public:
  GroupElement(const LieAlgebra& L, CMatrix m, double tol = 1e-10);
  /// No membership check; for products and exponentials computed internally.
  static GroupElement trusted(CMatrix m) { return GroupElement(std::move(m)); }
  static GroupElement identity(const LieAlgebra& L) { return trusted(CMatrix::Identity(L.rep_dim(), L.rep_dim())); }

  const CMatrix& matrix() const { return m_; }
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const { return trusted(m_ * o.m_); }

 private:
  explicit GroupElement(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Distance of `m` from the group variety of L (0 on the group).
double variety_residual(const LieAlgebra& L, const CMatrix& m);

Eigen::VectorXd bracket(const LieAlgebra& L, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);
/// Closed form per block where available, otherwise the matrix series.
GroupElement exp_elem(const LieAlgebra& L, const Eigen::VectorXd& X);
/// Padé/scaling-squaring matrix exponential of the represented element.
GroupElement exp_series(const LieAlgebra& L, const Eigen::VectorXd& X);
/// Coefficients of g X g^{-1}.
Eigen::VectorXd adjoint_group(const LieAlgebra& L, const GroupElement& g, const Eigen::VectorXd& X);
/// Matrix of Ad_g on basis coefficients.
Eigen::MatrixXd adjoint_group_matrix(const LieAlgebra& L, const GroupElement& g);
/// Matrix of ad_X: column b holds [X, e_b].
Eigen::MatrixXd adjoint_algebra(const LieAlgebra& L, const Eigen::VectorXd& X);
double kappa_pair(const LieAlgebra& L, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);
/// Left-trivialized differential of exp: e^{-v} d/ds e^{v+sw}|_0 = J(v) w,
/// J(v) = Σ_k (-1)^k ad_v^k / (k+1)!.
Eigen::MatrixXd dexp_matrix(const LieAlgebra& L, const Eigen::VectorXd& v);

/// Largest Jacobi residual over the basis, with the offending triple.
struct JacobiDefect {
  double residual;
  int a, b, c;
};
JacobiDefect jacobi_defect(int dim, const std::vector<double>& c);

}  // namespace cym
