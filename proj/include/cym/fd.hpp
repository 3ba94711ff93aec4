#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace cym {

/// Central-difference weights for order 2 or 4 applied to f(z0 + s e_i).
template <class M>
M fd_derivative(const std::function<M(double)>& f, double h, int order) {
  if (order == 4) return M((-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h));
  return M((f(h) - f(-h)) / (2.0 * h));
}

/// ∂f/∂z_i at z0 for every coordinate i.
inline std::vector<Eigen::MatrixXd> fd_gradient(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& f,
                                                const Eigen::VectorXd& z0, double h, int order) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(z0.size()));
  for (Eigen::Index i = 0; i < z0.size(); ++i) {
    std::function<Eigen::MatrixXd(double)> g = [&](double s) {
      Eigen::VectorXd z = z0;
      z[i] += s;
      return f(z);
    };
    out.push_back(fd_derivative<Eigen::MatrixXd>(g, h, order));
  }
  return out;
}

/// Derivative at s = 0 of a matrix-valued curve.
inline Eigen::MatrixXcd fd_curve(const std::function<Eigen::MatrixXcd(double)>& c, double h, int order) {
  return fd_derivative<Eigen::MatrixXcd>(c, h, order);
}

/// Step and stencil used for derivatives of group-valued curves: fourth order
/// with h = 1e-3 keeps both truncation and rounding near 1e-12.
inline constexpr double kCurveStep = 1e-3;
inline constexpr int kCurveOrder = 4;

}  // namespace cym
