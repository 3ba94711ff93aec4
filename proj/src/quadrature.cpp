#include "cym/quadrature.hpp"

#include "cym/common.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace cym {

Rule1d gauss_legendre(int order) {
  require(order >= 1, "Gauss-Legendre order must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1d r;
  for (int i = 0; i < order; ++i) {
    r.nodes.push_back(es.eigenvalues()[i]);
    const double v0 = es.eigenvectors()(0, i);
    r.weights.push_back(2.0 * v0 * v0);
  }
  // symmetrize to remove eigen-solver noise
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (r.nodes[static_cast<std::size_t>(j)] - r.nodes[static_cast<std::size_t>(i)]);
    const double w = 0.5 * (r.weights[static_cast<std::size_t>(i)] + r.weights[static_cast<std::size_t>(j)]);
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(j)] = x;
    r.weights[static_cast<std::size_t>(i)] = r.weights[static_cast<std::size_t>(j)] = w;
  }
  if (order % 2 == 1) r.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  return r;
}

Rule1d sinh_graded_rule(int order, double R) {
  require(R > 0.0, "quadrature radius must be positive");
  const Rule1d gl = gauss_legendre(order);
  const double a = std::asinh(R);
  Rule1d r;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = gl.nodes[i];
    r.nodes.push_back(std::sinh(a * t));
    r.weights.push_back(gl.weights[i] * a * std::cosh(a * t));
  }
  return r;
}

}  // namespace cym
