#include "cpsi/linalg/kernels.hpp"

namespace cpsi::kernels::scalar {

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
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
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void crot(cplx* x, cplx* y, std::size_t n, double c, cplx s) {
  const double sr = s.real();
  const double si = s.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double yr = y[i].real();
    const double yi = y[i].imag();
    // conj(s)*y = (sr*yr + si*yi) + i(sr*yi - si*yr)
    x[i] = {c * xr - (sr * yr + si * yi), c * xi - (sr * yi - si * yr)};
    // s*x = (sr*xr - si*xi) + i(sr*xi + si*xr)
    y[i] = {(sr * xr - si * xi) + c * yr, (sr * xi + si * xr) + c * yi};
  }
}

}  // namespace cpsi::kernels::scalar
