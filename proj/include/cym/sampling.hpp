#pragma once

#include "cym/algebra.hpp"
#include "cym/forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cym {

struct SamplePlan {
  std::string mode = "random";  // "random" or "grid"
  int points = 64;              // total points (random) or points per axis (grid)
  std::uint64_t seed = 42;
  int tangent_probes = 4;
};

/// Deterministic in (plan, box). Grid points are cell centres, so none lies on the boundary.
std::vector<Point> sample_points(const Chart& chart, const SamplePlan& plan);
/// Random points from an explicit generator, kept `margin` (relative) away from the box faces.
std::vector<Point> random_points(const Chart& chart, Rng& rng, int count, double margin = 0.02);

Eigen::VectorXd random_algebra_element(const LieAlgebra& L, Rng& rng, double scale);
/// exp of a random element with coefficients in [-scale, scale].
GroupElement random_group_element(const LieAlgebra& L, Rng& rng, double scale = 2.0);

}  // namespace cym
