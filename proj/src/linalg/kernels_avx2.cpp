#include "cpsi/linalg/kernels.hpp"

#if defined(CPSI_HAVE_AVX2)

#include <immintrin.h>

namespace cpsi::kernels::avx2 {

namespace {

// Packed layout: one __m256d holds two complex numbers [re0, im0, re1, im1].

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// alpha * v for a broadcast complex alpha = (ar, ai).
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

}  // namespace

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(ar, ai, load2(x + i))));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

void cgemm(const cplx* a, const cplx* b, cplx* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) caxpy(a[i * k + p], b + p * n, crow, n);
  }
}

cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  alignas(32) double re_parts[4];
  alignas(32) double im_parts[4];
  _mm256_store_pd(re_parts, acc_re);
  _mm256_store_pd(im_parts, acc_im);
  double re = (re_parts[0] + re_parts[1]) + (re_parts[2] + re_parts[3]);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const __m256d neg_si = _mm256_set1_pd(-s.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    // conj(s) * y, then s * x
    const __m256d sy = cmul_bcast(sr, neg_si, yv);
    const __m256d sx = cmul_bcast(sr, si, xv);
    store2(x + i, _mm256_fmsub_pd(cv, xv, sy));
    store2(y + i, _mm256_fmadd_pd(cv, yv, sx));
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = c * xi - std::conj(s) * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace cpsi::kernels::avx2

#endif
