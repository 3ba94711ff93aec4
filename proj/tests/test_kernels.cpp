#include "support.hpp"

#include "cym/kernels.hpp"
#include "cym/quadrature.hpp"

#include <cmath>
#include <numeric>

using namespace cym;
using namespace cym::kernels;

namespace {

std::vector<double> random_values(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

std::vector<WedgeTerm> all_terms() {
  // κ(F ∧ G) on R⁴: the three complementary pairs of 2-sets, both orders
  return {{0, 5, 1.0}, {5, 0, 1.0}, {1, 4, -1.0}, {4, 1, -1.0}, {2, 3, 1.0}, {3, 2, 1.0}};
}

}  // namespace

TEST_CASE("scalar wedge density against a direct loop") {
  Rng rng(1);
  const int dim = 3;
  const std::size_t npts = 37;
  const auto F = random_values(6 * dim * npts, rng), G = random_values(6 * dim * npts, rng), kap = random_values(dim * dim, rng);
  const auto terms = all_terms();
  std::vector<double> out(npts);
  scalar::wedge_pair_density(F.data(), G.data(), npts, dim, kap.data(), terms.data(), 6, out.data());
  for (std::size_t p = 0; p < npts; ++p) {
    double s = 0.0;
    for (const auto& t : terms)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          s += t.sign * kap[static_cast<std::size_t>(a * dim + b)] * F[(t.left * dim + a) * npts + p] *
               G[(t.right * dim + b) * npts + p];
    CHECK(out[p] == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (detected_isa() != Isa::Avx2) {
    MESSAGE("AVX2/FMA not available; equivalence not exercised");
    return;
  }
  Rng rng(2);
  for (int dim : {1, 3, 4})
    for (std::size_t npts : {1u, 3u, 4u, 5u, 8u, 127u, 128u, 129u, 1000u, 4099u}) {
      const auto F = random_values(6 * dim * npts, rng), G = random_values(6 * dim * npts, rng);
      const auto kap = random_values(static_cast<std::size_t>(dim * dim), rng);
      const auto terms = all_terms();
      std::vector<double> a(npts), b(npts);
      scalar::wedge_pair_density(F.data(), G.data(), npts, dim, kap.data(), terms.data(), 6, a.data());
      avx2::wedge_pair_density(F.data(), G.data(), npts, dim, kap.data(), terms.data(), 6, b.data());
      double scale = 0.0, diff = 0.0;
      for (std::size_t p = 0; p < npts; ++p) {
        scale = std::max(scale, std::abs(a[p]));
        diff = std::max(diff, std::abs(a[p] - b[p]));
      }
      CHECK(diff <= 1e-13 * std::max(1.0, scale));
      const auto w = random_values(npts, rng);
      const double sa = scalar::weighted_sum(w.data(), a.data(), npts), sb = avx2::weighted_sum(w.data(), a.data(), npts);
      double abs_sum = 0.0;
      for (std::size_t p = 0; p < npts; ++p) abs_sum += std::abs(w[p] * a[p]);
      CHECK(std::abs(sa - sb) <= 1e-13 * std::max(1.0, abs_sum));
    }
}

TEST_CASE("pairwise sum is accurate and dispatch can be pinned") {
  const std::size_t n = 100000;
  std::vector<double> w(n, 1.0), f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = 1.0 / static_cast<double>(i + 1);
  long double ref = 0.0L;
  for (std::size_t i = n; i-- > 0;) ref += 1.0L / static_cast<long double>(i + 1);
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  const double s = weighted_sum(w.data(), f.data(), n);
  force_isa(std::nullopt);
  CHECK(active_isa() == detected_isa());
  CHECK(std::abs(s - static_cast<double>(ref)) < 1e-13);
}

TEST_CASE("Gauss-Legendre rules") {
  const Rule1d r2 = gauss_legendre(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  for (int order : {3, 8, 24}) {
    const Rule1d r = gauss_legendre(order);
    for (int k = 0; k <= 2 * order - 1; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("sinh-graded rule integrates a rational profile") {
  const double R = 20.0;
  // ∫ (1 + x²)^{-2} = x / (2(1 + x²)) + atan(x) / 2
  const double exact = R / (1.0 + R * R) + std::atan(R);
  auto integrate = [&](int order) {
    const Rule1d r = sinh_graded_rule(order, R);
    CHECK(r.nodes.front() == doctest::Approx(-r.nodes.back()));
    CHECK(std::abs(r.nodes.back()) < R);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] / std::pow(1.0 + r.nodes[i] * r.nodes[i], 2);
    return std::abs(s - exact);
  };
  // numpy leggauss oracle: errors 1.48e-6 at order 24 and 2e-14 at order 48
  CHECK(integrate(24) < 2e-6);
  CHECK(integrate(48) < 1e-12);
}
