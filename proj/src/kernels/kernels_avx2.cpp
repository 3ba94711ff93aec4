// Compiled with -mavx2 -mfma. Must not include Eigen or any other header whose
// inline functions could be emitted here and picked up by non-AVX callers.
#include "cym/kernels.hpp"

#include <immintrin.h>

namespace cym::kernels::avx2 {

void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::size_t p = 0;
  for (; p + 4 <= npts; p += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int t = 0; t < nterms; ++t) {
      const double* f = F + static_cast<std::size_t>(terms[t].left) * d * npts;
      const double* g = G + static_cast<std::size_t>(terms[t].right) * d * npts;
      __m256d s = _mm256_setzero_pd();
      for (std::size_t a = 0; a < d; ++a) {
        const __m256d fa = _mm256_loadu_pd(f + a * npts + p);
        for (std::size_t b = 0; b < d; ++b) {
          const double k = kappa[a * d + b];
          if (k == 0.0) continue;
          const __m256d gb = _mm256_loadu_pd(g + b * npts + p);
          s = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_set1_pd(k), fa), gb, s);
        }
      }
      acc = _mm256_fmadd_pd(_mm256_set1_pd(terms[t].sign), s, acc);
    }
    _mm256_storeu_pd(out + p, acc);
  }
  for (; p < npts; ++p) {
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

namespace {

double leaf_sum(const double* w, const double* f, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

}  // namespace

double weighted_sum(const double* w, const double* f, std::size_t n) {
  if (n <= kPairwiseLeaf) return leaf_sum(w, f, n);
  const std::size_t half = n / 2;
  return weighted_sum(w, f, half) + weighted_sum(w + half, f + half, n - half);
}

}  // namespace cym::kernels::avx2
