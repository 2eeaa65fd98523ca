#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpsi/catalog.hpp"
#include "cpsi/fourier.hpp"
#include "cpsi/heat.hpp"
#include "cpsi/nuclear.hpp"
#include "cpsi/linalg/decomp.hpp"
#include "pairs.hpp"

using namespace cpsi;
using cpsi::testing::make_dual;
using cpsi::testing::Pair;

namespace {

const Pair kPairs[] = {{"Z12", "Z3"}, {"Z12", "Z4"},    {"S3", "Z2a"}, {"S3", "Z3"},     {"S4", "S3"},
                       {"S4", "V4"},  {"D4", "Z2rot"}, {"Q8", "Z4"},  {"S3", "trivial"}, {"S4", "full"}};

BiInvariantLaplacian laplacian_for(const std::string& group) {
  const auto spec = builtin_group(group);
  return laplacian_from_generators(spec.group, spec.generators_or_default(), spec.irreps);
}

class HeatPairs : public ::testing::TestWithParam<Pair> {};

}  // namespace

TEST(Laplacian, CyclicEigenvalues) {
  for (int n : {3, 5, 8, 12}) {
    const auto l = laplacian_for("Z" + std::to_string(n));
    auto got = l.eigenvalues();
    std::vector<double> expect;
    for (int k = 0; k < n; ++k) expect.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n));
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(got.size(), expect.size());
    for (int k = 0; k < n; ++k) EXPECT_NEAR(got[k], expect[k], 1e-12);
  }
}

TEST(Laplacian, EmptyGeneratorsGiveZero) {
  const auto spec = builtin_group("S4");
  const auto l = laplacian_from_generators(spec.group, {}, spec.irreps);
  for (double v : l.eigenvalues()) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, SymmetricGroupExample) {
  const auto spec = builtin_group("S3");
  const auto l = laplacian_from_generators(spec.group, {1, 2, 3}, spec.irreps);
  ASSERT_EQ(l.catalog().size(), 3u);
  EXPECT_NEAR(l.eigenvalues()[0], 0.0, 1e-14);
  EXPECT_NEAR(l.eigenvalues()[1], 6.0, 1e-14);
  EXPECT_NEAR(l.eigenvalues()[2], 3.0, 1e-14);
  EXPECT_LT(l.schur_residual(), 1e-14);
}

TEST(Laplacian, GroupMatrixSpectrum) {
  for (const char* name : {"S3", "S4", "Q8", "D5", "Z7"}) {
    const auto l = laplacian_for(name);
    auto got = hermitian_eigen(l.group_matrix()).values;
    std::vector<double> expect;
    for (std::size_t i = 0; i < l.catalog().size(); ++i)
      for (int k = 0; k < l.catalog()[i]->dim * l.catalog()[i]->dim; ++k) expect.push_back(l.eigenvalues()[i]);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], expect[k], 1e-11) << name;
  }
}

TEST(Laplacian, RejectsNonSymmetricGenerators) {
  const auto spec = builtin_group("S3");
  // Element 4 is a 3-cycle whose inverse 5 is missing.
  try {
    laplacian_from_generators(spec.group, {4}, spec.irreps);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("inverse of element 4"), std::string::npos) << e.what();
  }
  // A single transposition is symmetric but not closed under conjugation.
  try {
    laplacian_from_generators(spec.group, {1}, spec.irreps);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("conjugate of element 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(laplacian_from_generators(spec.group, {1, 2, 3, 3}, spec.irreps), DomainError);
  EXPECT_NO_THROW(laplacian_from_generators(spec.group, {1, 1, 2, 2, 3, 3}, spec.irreps));
}

TEST_P(HeatPairs, DescendedLaplacianKillsConstants) {
  const auto dual = make_dual(GetParam());
  const auto l = laplacian_for(GetParam().group);
  const auto lap = descend_laplacian(l, dual->space());
  const auto out = apply(lap, CosetFunction::constant(dual->space(), 1.0));
  for (const auto& v : out.values) EXPECT_LT(std::abs(v), 1e-13);
}

TEST_P(HeatPairs, ClassFunctionsAreEigenfunctions) {
  // x -> (xi(x) T)_{ij} lies in the lambda_xi eigenspace of the descended Laplacian.
  const auto dual = make_dual(GetParam());
  const auto l = laplacian_for(GetParam().group);
  const auto lap = descend_laplacian(l, dual->space());
  for (std::size_t c = 0; c < dual->size(); ++c) {
    const auto& cls = dual->at(c);
    const double lambda = l.eigenvalue(cls.irrep());
    for (int i = 0; i < cls.dim(); ++i)
      for (int j = 0; j < cls.dim(); ++j) {
        std::vector<cplx> v(dual->space()->size());
        for (int x = 0; x < dual->space()->size(); ++x) v[x] = cls.gamma[x](i, j);
        const auto out = apply(lap, CosetFunction(dual->space(), v));
        for (int x = 0; x < dual->space()->size(); ++x) EXPECT_LT(std::abs(out.values[x] - lambda * v[x]), 1e-12);
      }
  }
}

TEST_P(HeatPairs, LaplacianCommutesWithLift) {
  // (L f) o pi = L_G (f o pi) for the quotient map pi: G -> G/H.
  const auto dual = make_dual(GetParam());
  const auto& space = *dual->space();
  const auto l = laplacian_for(GetParam().group);
  SplitMix64 rng(50);
  const auto f = random_function(dual->space(), rng);
  const auto down = apply(descend_laplacian(l, dual->space()), f);
  const auto gm = l.group_matrix();
  const int order = space.group().order();
  for (int g = 0; g < order; ++g) {
    cplx up = 0.0;
    for (int k = 0; k < order; ++k) up += gm(g, k) * f.values[space.coset_of(k)];
    EXPECT_LT(std::abs(up - down.values[space.coset_of(g)]), 1e-12);
  }
}

TEST_P(HeatPairs, SymbolMatchesMatrixExponential) {
  const auto dual = make_dual(GetParam());
  const auto l = laplacian_for(GetParam().group);
  for (double t : {0.0, 0.1, 0.7, 2.0}) {
    const auto op = op_from_symbol(heat_symbol(l, dual, t));
    const auto oracle = heat_operator_oracle(l, dual->space(), t);
    EXPECT_LT(max_abs_diff(op.kernel, oracle.kernel), 1e-11) << t;
  }
}

TEST_P(HeatPairs, TraceThreeWays) {
  const auto dual = make_dual(GetParam());
  const auto l = laplacian_for(GetParam().group);
  for (double t : {0.0, 0.05, 0.3, 1.0, 2.0}) {
    const double tr = heat_trace(l, dual, t);
    const auto op = heat_operator_oracle(l, dual->space(), t);
    EXPECT_LT(std::abs(tr - kernel_diagonal_trace(op)), 1e-11 * tr);
    EXPECT_LT(std::abs(tr - nuclear_trace_via_symbol(heat_symbol(l, dual, t))), 1e-11 * tr);
  }
  EXPECT_NEAR(heat_trace(l, dual, 0.0), dual->space()->size(), 1e-12);
}

TEST_P(HeatPairs, SemigroupAndContraction) {
  const auto dual = make_dual(GetParam());
  const auto l = laplacian_for(GetParam().group);
  const auto a = op_from_symbol(heat_symbol(l, dual, 0.3));
  const auto b = op_from_symbol(heat_symbol(l, dual, 0.5));
  const auto ab = op_from_symbol(heat_symbol(l, dual, 0.8));
  EXPECT_LT(max_abs_diff(compose(a, b).kernel, ab.kernel), 1e-11);
  SplitMix64 rng(51);
  for (int k = 0; k < 10; ++k) {
    const auto f = random_function(dual->space(), rng);
    EXPECT_LE(lq_norm(apply(ab, f), 2.0), lq_norm(f, 2.0) * (1.0 + 1e-12));
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, HeatPairs, ::testing::ValuesIn(kPairs),
                         [](const auto& info) { return cpsi::testing::pair_name(info.param); });

TEST(HeatSymbol, Limits) {
  const auto dual = make_dual({"S4", "S3"});
  const auto l = laplacian_for("S4");
  EXPECT_LT(max_abs_diff(heat_symbol(l, dual, 0.0), MatrixSymbol::identity(dual)), 1e-15);
  // Large time: the averaging operator with kernel identically 1.
  const auto avg = op_from_symbol(heat_symbol(l, dual, 60.0));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(avg.kernel(i, j) - 1.0), 1e-12);
  EXPECT_NEAR(heat_trace(l, dual, 60.0), 1.0, 1e-12);
  EXPECT_THROW(heat_symbol(l, dual, -0.1), DomainError);
  EXPECT_THROW(heat_trace(l, dual, -1e-9), DomainError);
}

TEST(HeatTrace, SymmetricGroupExample) {
  const auto spec = builtin_group("S3");
  const auto l = laplacian_from_generators(spec.group, {1, 2, 3}, spec.irreps);
  const auto dual = make_dual({"S3", "Z2a"});
  EXPECT_NEAR(heat_trace(l, dual, 0.1), 1.0 + 2.0 * std::exp(-0.3), 1e-14);
  const auto full = make_dual({"S3", "trivial"});
  EXPECT_NEAR(heat_trace(l, full, 0.1), 1.0 + std::exp(-0.6) + 4.0 * std::exp(-0.3), 1e-13);
}

TEST(HeatTrace, MonotoneInTime) {
  const auto dual = make_dual({"D4", "Z2rot"});
  const auto l = laplacian_for("D4");
  double prev = heat_trace(l, dual, 0.0);
  for (int k = 1; k <= 20; ++k) {
    const double v = heat_trace(l, dual, 0.1 * k);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(DescendedLaplacian, TrivialSubgroupIsGroupMatrix) {
  const auto spec = builtin_group("Q8");
  const auto l = laplacian_from_generators(spec.group, spec.generators_or_default(), spec.irreps);
  const auto space = coset_space(spec.subgroup("trivial"));
  const auto lap = descend_laplacian(l, space);
  const auto gm = l.group_matrix();
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      EXPECT_LT(std::abs(lap.matrix()(x, y) - gm(space->representative(x), space->representative(y))), 1e-14);
}
