#include "cpsi/linalg/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpsi/linalg/kernels.hpp"

namespace cpsi {

namespace {

constexpr int kMaxSweeps = 100;

// Rotation J = [[c, s*e], [-s*conj(e), c]] that diagonalizes the Hermitian
// 2x2 block [[app, apq], [conj(apq), aqq]] via J^* A J.
struct Rotation {
  double c;
  cplx s;  // the (p,q) entry of J; the (q,p) entry is -conj(s)
};

Rotation jacobi_rotation(double app, double aqq, cplx apq) {
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;
  const double zeta = (aqq - app) / (2.0 * mag);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c * phase};
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& input) {
  if (!input.is_square()) throw DomainError("hermitian_eigen: matrix not square");
  const std::size_t n = input.rows();
  CMatrix a = 0.5 * (input + input.adjoint());
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  // Columns of v are rotated alongside a; working on v^T keeps them contiguous.
  CMatrix vt = CMatrix::identity(n);
  const double threshold = 1e-14 * a.frobenius_norm();

  HermitianEigen out;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= threshold) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (std::abs(apq) <= 0.1 * threshold) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        // a <- a J (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = r.c * akp - std::conj(r.s) * akq;
          a(k, q) = r.s * akp + r.c * akq;
        }
        // a <- J^* a (rows p, q); J^* = [[c, -s], [conj(s), c]]
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = r.c * apk - r.s * aqk;
          a(q, k) = std::conj(r.s) * apk + r.c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // v <- v J, i.e. rows p, q of v^T
        kernels::crot(vt.row(p).data(), vt.row(q).data(), n, r.c, r.s);
      }
    }
  }
  if (sweep == kMaxSweeps) throw NumericalError("hermitian_eigen: no convergence within 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  out.sweeps = sweep;
  return out;
}

Svd svd(const CMatrix& input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  if (m < n) throw DomainError("svd: expects rows >= cols");

  // Row k of `cols` is column k of the input.
  CMatrix cols = input.transpose();
  CMatrix vt = CMatrix::identity(n);
  constexpr double kTol = 1e-15;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx* ap = cols.row(p).data();
        cplx* aq = cols.row(q).data();
        const double alpha = kernels::cdotc(ap, ap, m).real();
        const double beta = kernels::cdotc(aq, aq, m).real();
        const cplx gamma = kernels::cdotc(ap, aq, m);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        kernels::crot(ap, aq, m, r.c, r.s);
        kernels::crot(vt.row(p).data(), vt.row(q).data(), n, r.c, r.s);
      }
    }
    if (!rotated) break;
  }
  if (sweep == kMaxSweeps) throw NumericalError("svd: no convergence within 100 sweeps");

  std::vector<double> norms(n);
  for (std::size_t k = 0; k < n; ++k) norms[k] = cols.row(k).empty() ? 0.0 : std::sqrt(kernels::cdotc(cols.row(k).data(), cols.row(k).data(), m).real());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  Svd out;
  out.values.resize(n);
  out.u = CMatrix(m, n);
  out.v = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    const double s = norms[src];
    out.values[k] = s;
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = s > 0.0 ? cols(src, i) / s : cplx{0.0};
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = vt(src, i);
  }
  out.sweeps = sweep;
  return out;
}

std::vector<cplx> eigenvalues(const CMatrix& input) {
  if (!input.is_square()) throw DomainError("eigenvalues: matrix not square");
  const std::size_t n = input.rows();
  CMatrix h = input;
  if (n == 0) return {};

  // Householder reduction to upper Hessenberg form.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx{1.0};
    std::vector<cplx> v(n - k - 1);
    for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
    v[0] += phase * xnorm;
    double vnorm = 0.0;
    for (const auto& vi : v) vnorm += std::norm(vi);
    vnorm = std::sqrt(vnorm);
    for (auto& vi : v) vi /= vnorm;
    // h <- (I - 2 v v^*) h
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i - k - 1]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i - k - 1] * dot;
    }
    // h <- h (I - 2 v v^*)
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j - k - 1];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * dot * std::conj(v[j - k - 1]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  constexpr double kEps = 2.220446049250313e-16;
  std::vector<cplx> out;
  out.reserve(n);
  std::size_t hi = n - 1;
  int iter = 0;
  int since_deflation = 0;
  const int max_iter = 100 * static_cast<int>(n);
  while (true) {
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (std::abs(h(lo, lo - 1)) <= kEps * (scale > 0.0 ? scale : 1.0)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out.push_back(h(hi, hi));
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++iter > max_iter) throw NumericalError("eigenvalues: QR iteration did not converge");

    // Wilkinson shift from the trailing 2x2 block.
    const cplx a = h(hi - 1, hi - 1);
    const cplx b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1);
    const cplx d = h(hi, hi);
    cplx shift;
    if (++since_deflation % 11 == 10) {
      shift = d + std::abs(c) * 0.75;  // exceptional shift
    } else {
      const cplx half_tr = 0.5 * (a + d);
      const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const cplx l1 = half_tr + disc;
      const cplx l2 = half_tr - disc;
      shift = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    std::vector<double> gc(hi - lo);
    std::vector<cplx> gs(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const cplx x = h(k, k);
      const cplx y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      double cc;
      cplx ss;
      if (r == 0.0) {
        cc = 1.0;
        ss = 0.0;
      } else if (std::abs(x) == 0.0) {
        cc = 0.0;
        ss = 1.0;
      } else {
        cc = std::abs(x) / r;
        ss = (x / std::abs(x)) * std::conj(y) / r;
      }
      gc[k - lo] = cc;
      gs[k - lo] = ss;
      // rows k, k+1: G = [[c, s], [-conj(s), c]]
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx u = h(k, j);
        const cplx w = h(k + 1, j);
        h(k, j) = cc * u + ss * w;
        h(k + 1, j) = -std::conj(ss) * u + cc * w;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const double cc = gc[k - lo];
      const cplx ss = gs[k - lo];
      // columns k, k+1 times G^* = [[c, -s], [conj(s), c]]
      for (std::size_t i = lo; i <= std::min(k + 2, hi); ++i) {
        const cplx u = h(i, k);
        const cplx w = h(i, k + 1);
        h(i, k) = cc * u + std::conj(ss) * w;
        h(i, k + 1) = -ss * u + cc * w;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return out;
}

CMatrix spectral_function(const HermitianEigen& eig, const std::function<double(double)>& fn) {
  const std::size_t n = eig.values.size();
  CMatrix scaled = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = fn(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= f;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace cpsi
