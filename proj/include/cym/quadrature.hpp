#pragma once

#include <vector>

namespace cym {

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
Rule1d gauss_legendre(int order);

/// Gauss-Legendre in t mapped through x = sinh(a t), a = asinh(R), onto [-R, R].
/// Nodes cluster near the origin, where a rational integrand concentrates its mass.
Rule1d sinh_graded_rule(int order, double R);

}  // namespace cym
