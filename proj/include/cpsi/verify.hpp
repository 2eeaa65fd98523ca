#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpsi/catalog.hpp"

namespace cpsi {

struct CheckResult {
  std::string id;
  std::string pair;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::string group;
  std::string subgroup;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  int passed_count() const;
  int failed_count() const { return static_cast<int>(checks.size()) - passed_count(); }
  bool passed() const { return failed_count() == 0; }
  /// Failing check with the largest residual / tolerance ratio, or nullptr.
  const CheckResult* worst() const;
};

struct VerifyOptions {
  /// all, core, fourier, quantize, schatten, nuclear or heat.
  std::string suite = "all";
  /// Replaces every per-check tolerance when set.
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  int functions = 100;
  int operators = 50;
  int pairs = 20;
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite.
VerificationReport run_verification(const GroupSpec& spec, const std::string& subgroup, const VerifyOptions& options);

/// Human table with timings.
std::string format_table(const VerificationReport& report);
/// Structured output; no timings, so identical runs give identical bytes.
std::string format_json(const VerificationReport& report);
std::string format_csv(const VerificationReport& report);

}  // namespace cpsi
