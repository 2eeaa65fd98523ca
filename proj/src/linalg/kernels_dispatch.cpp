#include <atomic>

#include "cpsi/linalg/kernels.hpp"

namespace cpsi::kernels {

namespace {

Backend detect() { return avx2_available() ? Backend::kAvx2 : Backend::kScalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::kAvx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(CPSI_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_available()) throw DomainError("AVX2 backend not available on this CPU/build");
  current().store(b, std::memory_order_relaxed);
}

void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
#if defined(CPSI_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) return avx2::cgemm(a, b, c, m, k, n);
#endif
  scalar::cgemm(a, b, c, m, k, n);
}

cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
#if defined(CPSI_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) return avx2::cdotc(x, y, n);
#endif
  return scalar::cdotc(x, y, n);
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
#if defined(CPSI_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) return avx2::caxpy(alpha, x, y, n);
#endif
  scalar::caxpy(alpha, x, y, n);
}

void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
#if defined(CPSI_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) return avx2::crot(x, y, n, c, s);
#endif
  scalar::crot(x, y, n, c, s);
}

}  // namespace cpsi::kernels
