#include "cym/kernels.hpp"

#include <atomic>

namespace cym::kernels {

namespace {
// -1: follow detection; otherwise a forced Isa value
std::atomic<int> g_forced{-1};
}  // namespace

Isa detected_isa() {
#if defined(__x86_64__) || defined(__i386__)
  static const Isa isa = (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) ? Isa::Avx2 : Isa::Scalar;
  return isa;
#else
  return Isa::Scalar;
#endif
}

Isa active_isa() {
  const int f = g_forced.load(std::memory_order_relaxed);
  if (f < 0) return detected_isa();
  const Isa want = static_cast<Isa>(f);
  if (want == Isa::Avx2 && detected_isa() != Isa::Avx2) return Isa::Scalar;
  return want;
}

void force_isa(std::optional<Isa> isa) { g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void wedge_pair_density(const double* F, const double* G, std::size_t npts, int dim, const double* kappa,
                        const WedgeTerm* terms, int nterms, double* out) {
  if (active_isa() == Isa::Avx2) return avx2::wedge_pair_density(F, G, npts, dim, kappa, terms, nterms, out);
  scalar::wedge_pair_density(F, G, npts, dim, kappa, terms, nterms, out);
}

double weighted_sum(const double* w, const double* f, std::size_t n) {
  if (active_isa() == Isa::Avx2) return avx2::weighted_sum(w, f, n);
  return scalar::weighted_sum(w, f, n);
}

}  // namespace cym::kernels
