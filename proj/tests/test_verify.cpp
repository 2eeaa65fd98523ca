#include <gtest/gtest.h>

#include <algorithm>

#include "cpsi/verify.hpp"

using namespace cpsi;

namespace {

bool has_check(const VerificationReport& r, const std::string& id) {
  return std::any_of(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.id == id; });
}

}  // namespace

TEST(Verify, SymmetricGroupAllSuitesPass) {
  const auto report = run_verification(builtin_group("S3"), "Z2a", VerifyOptions{});
  EXPECT_GE(report.checks.size(), 20u);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.id << " residual " << c.residual;
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.worst(), nullptr);
}

TEST(Verify, EverySuiteRunsOnItsOwn) {
  const auto spec = builtin_group("Q8");
  for (const auto& suite : suite_names()) {
    VerifyOptions opt;
    opt.suite = suite;
    const auto report = run_verification(spec, "Z4", opt);
    EXPECT_FALSE(report.checks.empty()) << suite;
    EXPECT_TRUE(report.passed()) << suite;
    if (suite != "all")
      for (const auto& c : report.checks) EXPECT_EQ(c.id.rfind(suite + ".", 0), 0u) << c.id;
  }
  VerifyOptions bad;
  bad.suite = "nope";
  EXPECT_THROW(run_verification(spec, "Z4", bad), DomainError);
  EXPECT_THROW(run_verification(spec, "nope", VerifyOptions{}), DomainError);
}

TEST(Verify, CyclicQuotientRunsClassicalDft) {
  VerifyOptions opt;
  opt.suite = "fourier";
  const auto report = run_verification(builtin_group("Z12"), "Z3", opt);
  EXPECT_TRUE(has_check(report, "fourier.classical_dft"));
  EXPECT_TRUE(report.passed());
  const auto other = run_verification(builtin_group("S3"), "Z2a", opt);
  EXPECT_FALSE(has_check(other, "fourier.classical_dft"));
}

TEST(Verify, ImpossibleToleranceFails) {
  VerifyOptions opt;
  opt.suite = "schatten";
  opt.tolerance = 1e-30;
  const auto report = run_verification(builtin_group("S4"), "V4", opt);
  EXPECT_FALSE(report.passed());
  ASSERT_NE(report.worst(), nullptr);
  EXPECT_FALSE(report.worst()->passed);
  for (const auto& c : report.checks) EXPECT_EQ(c.tolerance, 1e-30);
}

TEST(Verify, OutputIsDeterministic) {
  VerifyOptions opt;
  opt.seed = 77;
  const auto a = run_verification(builtin_group("D4"), "Z2rot", opt);
  const auto b = run_verification(builtin_group("D4"), "Z2rot", opt);
  EXPECT_EQ(format_json(a), format_json(b));
  EXPECT_EQ(format_csv(a), format_csv(b));
  opt.seed = 78;
  const auto c = run_verification(builtin_group("D4"), "Z2rot", opt);
  EXPECT_NE(format_csv(a), format_csv(c));
}

TEST(Verify, CsvLayout) {
  VerifyOptions opt;
  opt.suite = "core";
  const auto csv = format_csv(run_verification(builtin_group("S3"), "Z3", opt));
  EXPECT_EQ(csv.rfind("check,pair,residual,tolerance,status\n", 0), 0u);
  EXPECT_NE(csv.find("core.weil,S3/Z3,"), std::string::npos);
}
