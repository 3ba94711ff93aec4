#include "cym/sampling.hpp"

#include <cmath>

namespace cym {

std::vector<Point> random_points(const Chart& chart, Rng& rng, int count, double margin) {
  std::vector<Point> out;
  const int n = chart.n();
  for (int k = 0; k < count; ++k) {
    Point x(n);
    for (int i = 0; i < n; ++i) {
      const auto [lo, hi] = chart.box()[static_cast<std::size_t>(i)];
      const double m = margin * (hi - lo);
      x[i] = rng.uniform(lo + m, hi - m);
    }
    out.push_back(x);
  }
  return out;
}

std::vector<Point> sample_points(const Chart& chart, const SamplePlan& plan) {
  require(plan.points >= 1, "sample plan needs at least one point");
  if (plan.mode == "grid") {
    const int n = chart.n(), m = plan.points;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= m;
    std::vector<Point> out;
    for (long k = 0; k < total; ++k) {
      Point x(n);
      long r = k;
      for (int i = 0; i < n; ++i) {
        const auto [lo, hi] = chart.box()[static_cast<std::size_t>(i)];
        x[i] = lo + (hi - lo) * ((static_cast<double>(r % m) + 0.5) / m);
        r /= m;
      }
      out.push_back(x);
    }
    return out;
  }
  require(plan.mode == "random", "sample plan mode must be 'random' or 'grid'");
  Rng rng(plan.seed);
  return random_points(chart, rng, plan.points);
}

Eigen::VectorXd random_algebra_element(const LieAlgebra& L, Rng& rng, double scale) {
  return rng.uniform_vector(L.dim(), -scale, scale);
}

GroupElement random_group_element(const LieAlgebra& L, Rng& rng, double scale) {
  return exp_elem(L, random_algebra_element(L, rng, scale));
}

}  // namespace cym
