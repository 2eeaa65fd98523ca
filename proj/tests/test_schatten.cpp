#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "cpsi/catalog.hpp"
#include "pairs.hpp"
#include "cpsi/linalg/decomp.hpp"
#include "cpsi/nuclear.hpp"
#include "cpsi/schatten.hpp"

using namespace cpsi;
using cpsi::testing::make_dual;
using cpsi::testing::Pair;

namespace {

const Pair kPairs[] = {{"Z12", "Z3"}, {"Z12", "Z4"},    {"S3", "Z2a"}, {"S3", "Z3"},     {"S4", "S3"},
                       {"S4", "V4"},  {"D4", "Z2rot"}, {"Q8", "Z4"},  {"S4", "trivial"}, {"Q8", "full"}};

constexpr double kInf = std::numeric_limits<double>::infinity();

class SchattenPairs : public ::testing::TestWithParam<Pair> {};

}  // namespace

TEST_P(SchattenPairs, HilbertSchmidtIdentity) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(20);
  for (int k = 0; k < 50; ++k) {
    const auto t = random_operator(dual->space(), rng);
    const double s2 = schatten_norm(singular_values(t), 2.0);
    EXPECT_LT(std::abs(s2 - hs_norm_via_symbol(symbol_from_operator(t, dual))), 1e-10 * s2);
    // Kernel form: sum mu^2 |K|^2.
    const double kernel = t.kernel.frobenius_norm() * dual->space()->weight();
    EXPECT_LT(std::abs(s2 * s2 - kernel * kernel), 1e-12 * kernel * kernel);
  }
}

TEST_P(SchattenPairs, CriterionForSeveralExponents) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto t = random_operator(dual->space(), rng);
    for (double r : {0.5, 1.0, 2.0, 3.0}) EXPECT_LT(schatten_criterion_check(t, dual, r).residual, 1e-9) << r;
  }
}

TEST_P(SchattenPairs, FractionalPowerIdentity) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(22);
  const auto t = random_operator(dual->space(), rng);
  const auto sv = singular_values(t);
  for (double r : {0.5, 1.0, 3.0})
    for (double q : {1.0, 2.0}) {
      const double lhs = std::pow(schatten_norm(sv, r), r);
      const double rhs = std::pow(schatten_norm(singular_values(fractional_modulus(t, r / q)), q), q);
      EXPECT_LT(std::abs(lhs - rhs), 1e-9 * lhs);
    }
}

TEST_P(SchattenPairs, UnitaryInvariance) {
  const auto dual = make_dual(GetParam());
  const auto& space = *dual->space();
  const auto& g = space.group();
  SplitMix64 rng(23);
  const auto t = random_operator(dual->space(), rng);
  const auto sv = singular_values(t);
  for (int e = 0; e < g.order(); ++e) {
    CMatrix u(space.size(), space.size());
    for (int x = 0; x < space.size(); ++x) u(x, space.translate(g.inverse(e), x)) = static_cast<double>(space.size());
    const auto moved = singular_values(compose(LinearOperator(dual->space(), u), t));
    for (std::size_t i = 0; i < sv.values.size(); ++i) EXPECT_NEAR(moved.values[i], sv.values[i], 1e-11 * sv.values[0]);
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, SchattenPairs, ::testing::ValuesIn(kPairs), [](const auto& info) { return cpsi::testing::pair_name(info.param); });

TEST(Schatten, IdentityOperator) {
  const auto dual = make_dual({"S4", "V4"});
  const auto id = LinearOperator::identity(dual->space());
  const auto sv = singular_values(id);
  ASSERT_EQ(sv.values.size(), 6u);
  for (double v : sv.values) EXPECT_NEAR(v, 1.0, 1e-14);
  EXPECT_NEAR(schatten_norm(sv, 2.0), std::sqrt(6.0), 1e-13);
  EXPECT_NEAR(schatten_norm(sv, 1.0), 6.0, 1e-13);
  EXPECT_NEAR(schatten_norm(sv, kInf), 1.0, 1e-14);
  EXPECT_NEAR(hs_norm_via_symbol(MatrixSymbol::identity(dual)), std::sqrt(6.0), 1e-13);
  const auto rep = schatten_criterion_check(id, dual, 1.0);
  EXPECT_NEAR(rep.quasi_norm, 6.0, 1e-12);
  EXPECT_NEAR(rep.symbol_side, 6.0, 1e-12);
  EXPECT_EQ(hs_norm_via_symbol(MatrixSymbol::zero(dual)), 0.0);
}

TEST(Schatten, RankOneKernel) {
  // K = N u v^* with Euclidean unit vectors: T f = u <f, v> in the coset basis.
  const auto dual = make_dual({"S3", "Z2a"});
  SplitMix64 rng(24);
  CMatrix u(3, 1), v(3, 1);
  for (int i = 0; i < 3; ++i) {
    u(i, 0) = rng.complex_normal();
    v(i, 0) = rng.complex_normal();
  }
  u *= 1.0 / u.frobenius_norm();
  v *= 1.0 / v.frobenius_norm();
  const double scale = 2.5;
  const LinearOperator t(dual->space(), (u * v.adjoint()) * cplx(3.0 * scale));
  const auto sv = singular_values(t);
  EXPECT_NEAR(sv.values[0], scale, 1e-13);
  EXPECT_LT(sv.values[1], 1e-13);
  EXPECT_LT(sv.values[2], 1e-13);
  const auto rep = schatten_criterion_check(t, dual, 1.0);
  EXPECT_NEAR(rep.quasi_norm, scale, 1e-12);
  EXPECT_NEAR(rep.symbol_side, scale, 1e-12);
}

TEST(Schatten, UnitaryDiagonalScaling) {
  const auto dual = make_dual({"Z12", "Z4"});
  CMatrix k(3, 3);
  for (int i = 0; i < 3; ++i) k(i, i) = std::polar(3.0 * 0.75, 0.3 + i);
  const auto sv = singular_values(LinearOperator(dual->space(), k));
  for (double s : sv.values) EXPECT_NEAR(s, 0.75, 1e-14);
}

TEST(Schatten, WeightedGeometryMatchesScaledMatrix) {
  // Matrix of T in the L^2(mu)-orthonormal basis sqrt(N) delta_x.
  const auto dual = make_dual({"S4", "S3"});
  const auto& space = dual->space();
  const int n = space->size();
  SplitMix64 rng(25);
  const auto t = random_operator(space, rng);
  CMatrix m(n, n);
  for (int w = 0; w < n; ++w) {
    std::vector<cplx> e(n, 0.0);
    e[w] = std::sqrt(static_cast<double>(n));
    const auto te = apply(t, CosetFunction(space, e));
    for (int x = 0; x < n; ++x) m(x, w) = te.values[x] * std::sqrt(static_cast<double>(n)) * space->weight();
  }
  const auto a = svd(m).values;
  const auto b = singular_values(t).values;
  for (int i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-13);
}

TEST(Schatten, RandomFrobenius) {
  const auto dual = make_dual({"Q8", "Z4"});
  SplitMix64 rng(26);
  const auto t = random_operator(dual->space(), rng);
  EXPECT_NEAR(schatten_norm(singular_values(t), 2.0), t.matrix().frobenius_norm(), 1e-12);
}

TEST(FractionalModulus, Properties) {
  const auto dual = make_dual({"S4", "trivial"});
  SplitMix64 rng(27);
  const auto t = random_operator(dual->space(), rng);
  // |T|^2 = T^* T with the mu-weighted composition.
  const auto sq = fractional_modulus(t, 2.0);
  const auto tt = compose(adjoint_operator(t), t);
  EXPECT_LT(max_abs_diff(sq.kernel, tt.kernel), 1e-11 * tt.kernel.max_abs());
  // Positive semidefinite input is a fixed point at s = 1.
  const auto psd = compose(adjoint_operator(t), t);
  const auto one = fractional_modulus(psd, 1.0);
  EXPECT_LT(max_abs_diff(one.kernel, psd.kernel), 1e-12 * psd.kernel.max_abs());
  // Spectrum maps to s_n^s and the result is Hermitian PSD.
  const auto sv = singular_values(t);
  const auto half = fractional_modulus(t, 0.5);
  const auto hv = singular_values(half);
  for (std::size_t i = 0; i < sv.values.size(); ++i) EXPECT_NEAR(hv.values[i], std::sqrt(sv.values[i]), 1e-11);
  EXPECT_LT(max_abs_diff(half.kernel, half.kernel.adjoint()), 1e-12);
  EXPECT_GT(hermitian_eigen(half.matrix()).values.back(), -1e-12);
  EXPECT_THROW(fractional_modulus(t, 0.0), DomainError);
}

TEST(Schatten, MonotoneInExponent) {
  const auto dual = make_dual({"S3", "trivial"});
  SplitMix64 rng(28);
  for (int k = 0; k < 10; ++k) {
    const auto sv = singular_values(random_operator(dual->space(), rng));
    double prev = kInf;
    for (double r : {0.5, 1.0, 2.0, 4.0, kInf}) {
      const double v = schatten_norm(sv, r);
      EXPECT_LE(v, prev * (1.0 + 1e-14));
      prev = v;
    }
  }
}

TEST(Schatten, RejectsNonPositiveExponent) {
  const auto dual = make_dual({"S3", "Z2a"});
  const auto sv = singular_values(LinearOperator::identity(dual->space()));
  EXPECT_THROW(schatten_norm(sv, 0.0), DomainError);
  EXPECT_THROW(schatten_norm(sv, -1.0), DomainError);
  EXPECT_THROW(schatten_criterion_check(LinearOperator::identity(dual->space()), dual, 0.0), DomainError);
}
