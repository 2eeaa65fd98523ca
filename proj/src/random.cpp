#include "cpsi/random.hpp"

#include <cmath>
#include <numbers>

namespace cpsi {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::split() { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

double SplitMix64::uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

double SplitMix64::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx SplitMix64::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace cpsi
