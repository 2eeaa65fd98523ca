#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cpsi/linalg/decomp.hpp"
#include "cpsi/linalg/kernels.hpp"
#include "cpsi/linalg/matrix.hpp"
#include "cpsi/random.hpp"

using namespace cpsi;

namespace {

CMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
  return m;
}

std::vector<cplx> random_vector(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<cplx> v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

CMatrix naive_product(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

class BackendGuard {
 public:
  BackendGuard() : saved_(kernels::active_backend()) {}
  ~BackendGuard() { kernels::set_backend(saved_); }

 private:
  kernels::Backend saved_;
};

}  // namespace

TEST(Matrix, ProductMatchesNaiveLoop) {
  for (std::size_t m : {1, 2, 3, 5, 8, 13}) {
    const auto a = random_matrix(m, m + 1, 11 + m);
    const auto b = random_matrix(m + 1, m + 2, 17 + m);
    EXPECT_LT(max_abs_diff(a * b, naive_product(a, b)), 1e-13);
  }
}

TEST(Matrix, TraceProductAdjoint) {
  const auto a = random_matrix(4, 4, 1);
  const auto b = random_matrix(4, 4, 2);
  EXPECT_LT(std::abs(trace_product_adjoint(a, b) - (a * b.adjoint()).trace()), 1e-13);
}

TEST(Matrix, ShapeMismatchThrows) {
  EXPECT_THROW((void)(CMatrix(2, 3) * CMatrix(2, 3)), DomainError);
  EXPECT_THROW((void)(CMatrix(2, 3) + CMatrix(3, 2)), DomainError);
}

TEST(Kernels, DispatcherReportsBackend) {
  const auto b = kernels::active_backend();
  EXPECT_FALSE(kernels::backend_name(b).empty());
  if (!kernels::avx2_available()) EXPECT_THROW(kernels::set_backend(kernels::Backend::kAvx2), DomainError);
}

#if defined(CPSI_HAVE_AVX2)

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    if (!kernels::avx2_available()) GTEST_SKIP() << "CPU without AVX2";
  }
};

TEST_P(KernelEquivalence, Cgemm) {
  const std::size_t n = GetParam();
  const auto a = random_matrix(n, n + 3, 100 + n);
  const auto b = random_matrix(n + 3, n + 1, 200 + n);
  CMatrix c1(n, n + 1), c2(n, n + 1);
  kernels::scalar::cgemm(a.data(), b.data(), c1.data(), n, n + 3, n + 1);
  kernels::avx2::cgemm(a.data(), b.data(), c2.data(), n, n + 3, n + 1);
  EXPECT_LT(max_abs_diff(c1, c2), 1e-13 * (1.0 + c1.max_abs()));
}

TEST_P(KernelEquivalence, Cdotc) {
  const std::size_t n = GetParam();
  const auto x = random_vector(n, 300 + n);
  const auto y = random_vector(n, 400 + n);
  const cplx s = kernels::scalar::cdotc(x.data(), y.data(), n);
  const cplx v = kernels::avx2::cdotc(x.data(), y.data(), n);
  EXPECT_LT(std::abs(s - v), 1e-13 * (1.0 + std::abs(s)));
}

TEST_P(KernelEquivalence, Caxpy) {
  const std::size_t n = GetParam();
  const auto x = random_vector(n, 500 + n);
  auto y1 = random_vector(n, 600 + n);
  auto y2 = y1;
  const cplx alpha(0.3, -1.7);
  kernels::scalar::caxpy(alpha, x.data(), y1.data(), n);
  kernels::avx2::caxpy(alpha, x.data(), y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(y1[i] - y2[i]), 1e-14);
}

TEST_P(KernelEquivalence, Crot) {
  const std::size_t n = GetParam();
  auto x1 = random_vector(n, 700 + n), y1 = random_vector(n, 800 + n);
  auto x2 = x1, y2 = y1;
  const double c = std::cos(0.4);
  const cplx s = std::polar(std::sin(0.4), 0.9);
  kernels::scalar::crot(x1.data(), y1.data(), n, c, s);
  kernels::avx2::crot(x2.data(), y2.data(), n, c, s);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_LT(std::abs(x1[i] - x2[i]), 1e-14);
    EXPECT_LT(std::abs(y1[i] - y2[i]), 1e-14);
  }
}

INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence, ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 16, 24, 31));

TEST(Kernels, DecompositionsAgreeAcrossBackends) {
  if (!kernels::avx2_available()) GTEST_SKIP() << "CPU without AVX2";
  BackendGuard guard;
  const auto a = random_matrix(12, 12, 42);
  kernels::set_backend(kernels::Backend::kScalar);
  const auto s1 = svd(a);
  kernels::set_backend(kernels::Backend::kAvx2);
  const auto s2 = svd(a);
  for (std::size_t i = 0; i < s1.values.size(); ++i) EXPECT_NEAR(s1.values[i], s2.values[i], 1e-12);
}

#endif

TEST(Kernels, CrotMatchesRotationMatrix) {
  auto x = random_vector(5, 1), y = random_vector(5, 2);
  const auto x0 = x, y0 = y;
  const double c = 0.6;
  const cplx s(0.0, 0.8);
  kernels::crot(x.data(), y.data(), 5, c, s);
  for (int i = 0; i < 5; ++i) {
    EXPECT_LT(std::abs(x[i] - (c * x0[i] - std::conj(s) * y0[i])), 1e-15);
    EXPECT_LT(std::abs(y[i] - (s * x0[i] + c * y0[i])), 1e-15);
  }
}

TEST(HermitianEigen, ReconstructsAndOrthonormal) {
  for (std::size_t n : {1, 2, 5, 12, 24}) {
    const auto b = random_matrix(n, n, n);
    const CMatrix a = b + b.adjoint();
    const auto e = hermitian_eigen(a);
    const auto rebuilt = spectral_function(e, [](double v) { return v; });
    EXPECT_LT(max_abs_diff(rebuilt, a), 1e-12 * a.max_abs());
    EXPECT_LT(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)), 1e-13);
    EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
  }
}

TEST(HermitianEigen, KnownSpectrum) {
  // Path graph Laplacian on 4 vertices: 2 - 2 cos(k pi / 4).
  CMatrix a(4, 4);
  for (int i = 0; i < 4; ++i) {
    a(i, i) = (i == 0 || i == 3) ? 1.0 : 2.0;
    if (i + 1 < 4) a(i, i + 1) = a(i + 1, i) = -1.0;
  }
  const auto e = hermitian_eigen(a);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(e.values[3 - k], 2.0 - 2.0 * std::cos(k * std::numbers::pi / 4.0), 1e-13);
}

TEST(Svd, ReconstructsWithSortedValues) {
  for (std::size_t n : {1, 3, 7, 24}) {
    const auto a = random_matrix(n, n, 50 + n);
    const auto s = svd(a);
    CMatrix us = s.u;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) us(i, j) *= s.values[j];
    EXPECT_LT(max_abs_diff(us * s.v.adjoint(), a), 1e-12 * (1.0 + a.max_abs()));
    EXPECT_TRUE(std::is_sorted(s.values.rbegin(), s.values.rend()));
  }
}

TEST(Svd, RankDeficient) {
  const auto u = random_matrix(6, 1, 3), v = random_matrix(6, 1, 4);
  const auto a = u * v.adjoint();
  const auto s = svd(a);
  EXPECT_NEAR(s.values[0], u.frobenius_norm() * v.frobenius_norm(), 1e-12);
  for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_LT(s.values[i], 1e-13);
}

TEST(Eigenvalues, TriangularAndRandom) {
  CMatrix t(4, 4);
  const std::vector<cplx> diag{{1, 2}, {-3, 0}, {0.5, -1}, {2, 2}};
  for (int i = 0; i < 4; ++i) {
    t(i, i) = diag[i];
    for (int j = i + 1; j < 4; ++j) t(i, j) = cplx(i + j, 1);
  }
  auto ev = eigenvalues(t);
  for (const auto& d : diag) {
    double best = 1e9;
    for (const auto& e : ev) best = std::min(best, std::abs(e - d));
    EXPECT_LT(best, 1e-10);
  }
  const auto a = random_matrix(20, 20, 9);
  cplx sum = 0.0;
  for (const auto& e : eigenvalues(a)) sum += e;
  EXPECT_LT(std::abs(sum - a.trace()), 1e-10);
}

TEST(Eigenvalues, NilpotentJordanBlock) {
  CMatrix j(5, 5);
  for (int i = 0; i + 1 < 5; ++i) j(i, i + 1) = 1.0;
  cplx sum = 0.0;
  for (const auto& e : eigenvalues(j)) sum += e;
  EXPECT_LT(std::abs(sum), 1e-12);
}

TEST(Random, DeterministicAndSplit) {
  SplitMix64 a(7), b(7);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  SplitMix64 c(7);
  auto child = c.split();
  EXPECT_NE(child.next(), SplitMix64(7).next());
  // First output of SplitMix64 seeded with 0 (published reference value).
  EXPECT_EQ(SplitMix64(0).next(), 0xE220A8397B1DCDAFULL);
}

TEST(Random, ComplexNormalMoments) {
  SplitMix64 rng(123);
  double sum2 = 0.0;
  cplx mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const cplx z = rng.complex_normal();
    mean += z;
    sum2 += std::norm(z);
  }
  EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
}
