#pragma once

#include <cstdint>

#include "cpsi/types.hpp"

namespace cpsi {

/// SplitMix64 generator. Chosen over the <random> engines/distributions so
/// that seeded output is identical across standard libraries; split() derives
/// an independent child stream (used to give every verification check its own
/// stream regardless of evaluation order).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  SplitMix64 split();

  /// Uniform on (0, 1].
  double uniform();
  /// Standard normal via Box-Muller (no cached second variate).
  double normal();
  /// (X + iY) / sqrt(2) with X, Y standard normal, so E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::uint64_t state_;
};

}  // namespace cpsi
