#pragma once

#include "cym/poly_form.hpp"

#include <doctest.h>

namespace cym::test {

inline ChartPtr box4(double half = 1.0) {
  return Chart::euclidean(4, std::vector<std::pair<double, double>>(4, {-half, half}));
}

inline std::vector<int> exps(std::initializer_list<int> e) { return std::vector<int>(e); }

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline LieForm random_form(const ChartPtr& chart, int degree, int dim, std::uint64_t seed, double scale = 0.5) {
  Rng rng(seed);
  return to_lie_form(chart, random_poly_form(chart->n(), degree, ValueKind::Algebra, dim, rng, scale, 2));
}

inline double colmax(const Eigen::MatrixXd& M) { return M.size() == 0 ? 0.0 : M.colwise().norm().maxCoeff(); }

}  // namespace cym::test
