#pragma once

// Density contraction and reduction kernels used by the charge quadrature.
// Scalar reference versions live in kernels::scalar, AVX2 versions in
// kernels::avx2; the unqualified entry points dispatch at runtime.

#include <cstddef>
#include <optional>

namespace cym::kernels {

enum class Isa { Scalar, Avx2 };

Isa detected_isa();
Isa active_isa();
/// Pin the dispatch target (tests); nullopt restores detection. Requests for
/// an ISA the CPU lacks fall back to scalar.
void force_isa(std::optional<Isa> isa);
const char* isa_name(Isa isa);

/// One signed pairing of component `left` of F with component `right` of G.
struct WedgeTerm {
  int left;
  int right;
  double sign;
};

/// Structure-of-arrays layout: value a of component c at node p is at
/// data[(c * dim + a) * npts + p].
/// out[p] = Σ_terms sign Σ_{a,b} kappa[a*dim+b] F[left,a,p] G[right,b,p].
void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out);
/// Σ w[i] f[i] with pairwise summation (fixed split points, so results are
/// reproducible for a given ISA).
double weighted_sum(const double* w, const double* f, std::size_t n);

namespace scalar {
void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out);
double weighted_sum(const double* w, const double* f, std::size_t n);
}  // namespace scalar

namespace avx2 {
void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out);
double weighted_sum(const double* w, const double* f, std::size_t n);
}  // namespace avx2

/// Leaf size of the pairwise reduction.
inline constexpr std::size_t kPairwiseLeaf = 128;

}  // namespace cym::kernels
