#include "cym/kernels.hpp"

namespace cym::kernels::scalar {

void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out) {
  const std::size_t d = static_cast<std::size_t>(dim);
  for (std::size_t p = 0; p < npts; ++p) {
    double acc = 0.0;
    for (int t = 0; t < nterms; ++t) {
      const double* f = F + static_cast<std::size_t>(terms[t].left) * d * npts;
      const double* g = G + static_cast<std::size_t>(terms[t].right) * d * npts;
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const double k = kappa[a * d + b];
          if (k != 0.0) s += k * f[a * npts + p] * g[b * npts + p];
        }
      acc += terms[t].sign * s;
    }
    out[p] = acc;
  }
}

double weighted_sum(const double* w, const double* f, std::size_t n) {
  if (n <= kPairwiseLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * f[i];
    return s;
  }
  const std::size_t half = n / 2;
  return weighted_sum(w, f, half) + weighted_sum(w + half, f + half, n - half);
}

}  // namespace cym::kernels::scalar
