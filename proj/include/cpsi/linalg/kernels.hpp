#pragma once

// Dense complex inner loops. Each routine has a scalar reference version and,
// on x86-64, an AVX2/FMA version; the dispatcher picks one at first use based
// on the running CPU. Tests pin the backend explicitly and compare them.

#include <cstddef>
#include <string_view>

#include "cpsi/types.hpp"

namespace cpsi::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b);

/// True when the library was built with AVX2 variants and the CPU runs them.
bool avx2_available();

Backend active_backend();

/// Forces a backend. Throws DomainError when the backend is unavailable.
void set_backend(Backend b);

/// c[m x n] = a[m x k] * b[k x n], all row-major, c overwritten.
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);

/// sum_i conj(x_i) * y_i
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);

/// y += alpha * x
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

/// Plane rotation of two vectors:
///   x' = c*x - conj(s)*y,  y' = s*x + c*y   (c real)
/// which is right-multiplication of the column pair [x y] by [[c, s], [-conj(s), c]].
void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s);

namespace scalar {
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s);
}  // namespace scalar

#if defined(CPSI_HAVE_AVX2)
namespace avx2 {
void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n);
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s);
}  // namespace avx2
#endif

}  // namespace cpsi::kernels
