#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpsi/catalog.hpp"
#include "pairs.hpp"
#include "cpsi/fourier.hpp"
#include "cpsi/quantize.hpp"

using namespace cpsi;
using cpsi::testing::make_dual;
using cpsi::testing::Pair;

namespace {

const Pair kPairs[] = {{"Z12", "Z3"}, {"Z12", "Z4"}, {"S3", "Z2a"}, {"S3", "Z3"},     {"S4", "S3"},
                       {"S4", "V4"},  {"D4", "Z2rot"}, {"Q8", "Z4"}, {"S3", "trivial"}, {"S4", "full"}};

class FourierPairs : public ::testing::TestWithParam<Pair> {};

}  // namespace

TEST_P(FourierPairs, PlancherelOnRandomFunctions) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_function(dual->space(), rng);
    const double l2 = lq_norm(f, 2.0);
    const double p = plancherel_norm(forward_transform(f, dual));
    EXPECT_LT(std::abs(l2 * l2 - p * p), 1e-12 * l2 * l2);
  }
}

TEST_P(FourierPairs, InversionRoundTrip) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_function(dual->space(), rng);
    const auto back = inverse_transform(forward_transform(f, dual));
    for (int x = 0; x < f.size(); ++x) EXPECT_LT(std::abs(back.values[x] - f.values[x]), 1e-11);
  }
}

TEST_P(FourierPairs, CoefficientsAreLeftAbsorbed) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(3);
  const auto f = forward_transform(random_function(dual->space(), rng), dual);
  for (std::size_t c = 0; c < dual->size(); ++c)
    EXPECT_LT(max_abs_diff(dual->at(c).projector() * f.blocks[c], f.blocks[c]), 1e-12);
}

TEST_P(FourierPairs, ForwardOfInverseKeepsLeftProjection) {
  const auto dual = make_dual(GetParam());
  SplitMix64 rng(4);
  auto f = FourierCoefficients::zero(dual);
  for (auto& b : f.blocks)
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = rng.complex_normal();
  const auto back = forward_transform(inverse_transform(f), dual);
  for (std::size_t c = 0; c < dual->size(); ++c)
    EXPECT_LT(max_abs_diff(back.blocks[c], dual->at(c).projector() * f.blocks[c]), 1e-11);
}

TEST_P(FourierPairs, ConstantFunction) {
  const auto dual = make_dual(GetParam());
  const auto f = forward_transform(CosetFunction::constant(dual->space(), 1.0), dual);
  for (std::size_t c = 0; c < dual->size(); ++c) {
    if (static_cast<int>(c) == dual->trivial_index())
      EXPECT_LT(std::abs(f.blocks[c](0, 0) - 1.0), 1e-13);
    else
      EXPECT_LT(f.blocks[c].max_abs(), 1e-13);
  }
  EXPECT_NEAR(plancherel_norm(f), 1.0, 1e-13);
}

TEST_P(FourierPairs, MatchesNaiveDoubleLoop) {
  const auto dual = make_dual(GetParam());
  const auto& space = *dual->space();
  SplitMix64 rng(5);
  const auto f = random_function(dual->space(), rng);
  const auto fast = forward_transform(f, dual);
  for (std::size_t c = 0; c < dual->size(); ++c) {
    const auto& cls = dual->at(c);
    const int d = cls.dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        cplx sum = 0.0;
        for (int x = 0; x < space.size(); ++x) {
          const auto& p = cls.irrep().matrices[space.representative(x)];
          cplx gba = 0.0;
          for (int m = 0; m < d; ++m) gba += p(b, m) * cls.projector()(m, a);
          sum += f.values[x] * std::conj(gba) * space.weight();
        }
        EXPECT_LT(std::abs(sum - fast.blocks[c](a, b)), 1e-13);
      }
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, FourierPairs, ::testing::ValuesIn(kPairs), [](const auto& info) { return cpsi::testing::pair_name(info.param); });

TEST(Fourier, IndicatorOfIdentityCoset) {
  const auto dual = make_dual({"S3", "Z2a"});
  const auto f = CosetFunction::indicator(dual->space(), 0);
  const auto coeffs = forward_transform(f, dual);
  EXPECT_LT(std::abs(coeffs.blocks[0](0, 0) - 1.0 / 3.0), 1e-15);
  EXPECT_NEAR(lq_norm(f, 2.0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(plancherel_norm(coeffs), 1.0 / std::sqrt(3.0), 1e-14);
}

TEST(Fourier, InverseOfTrivialBlockIsConstant) {
  const auto dual = make_dual({"S4", "V4"});
  auto f = FourierCoefficients::zero(dual);
  f.blocks[dual->trivial_index()](0, 0) = cplx(0.5, 2.0);
  for (const auto& v : inverse_transform(f).values) EXPECT_LT(std::abs(v - cplx(0.5, 2.0)), 1e-14);
}

TEST(Fourier, ClassicalDftOnCyclicQuotient) {
  // Z12 / <4> is Z4; class chi(3m) is the frequency m of the 4-point DFT.
  const auto dual = make_dual({"Z12", "Z3"});
  SplitMix64 rng(6);
  const auto f = random_function(dual->space(), rng);
  const auto fast = forward_transform(f, dual);
  ASSERT_EQ(dual->size(), 4u);
  for (int m = 0; m < 4; ++m) {
    cplx dft = 0.0;
    for (int j = 0; j < 4; ++j) dft += f.values[j] * std::polar(1.0, -2.0 * std::numbers::pi * m * j / 4.0);
    dft /= 4.0;
    EXPECT_LT(std::abs(dft - fast.blocks[m](0, 0)), 1e-12);
  }
}

TEST(Fourier, MismatchedSpacesThrow) {
  const auto a = make_dual({"S3", "Z2a"});
  const auto b = make_dual({"S3", "Z2b"});
  const auto f = CosetFunction::constant(b->space(), 1.0);
  EXPECT_THROW(forward_transform(f, a), DomainError);
}

TEST(LqNorm, ValuesAndDomain) {
  const auto dual = make_dual({"S3", "Z2a"});
  const auto c = CosetFunction::constant(dual->space(), cplx(3.0, 4.0));
  for (double q : {1.0, 1.5, 2.0, 7.0, std::numeric_limits<double>::infinity()}) EXPECT_NEAR(lq_norm(c, q), 5.0, 1e-14);
  const auto ind = CosetFunction::indicator(dual->space(), 1);
  EXPECT_NEAR(lq_norm(ind, 2.0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(lq_norm(ind, 1.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(lq_norm(ind, std::numeric_limits<double>::infinity()), 1.0, 0.0);
  EXPECT_THROW(lq_norm(c, 0.5), DomainError);
  EXPECT_THROW(lq_norm(c, std::nan("")), DomainError);
}
