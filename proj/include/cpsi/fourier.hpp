#pragma once

#include <vector>

#include "cpsi/coset_space.hpp"
#include "cpsi/dual.hpp"

namespace cpsi {

/// phi-hat(xi) for every class of the dual object, each a full d x d block.
/// Blocks produced by forward_transform satisfy T_H^xi * block = block.
struct FourierCoefficients {
  FourierCoefficients(DualPtr dual, std::vector<CMatrix> blocks);
  static FourierCoefficients zero(DualPtr dual);

  DualPtr dual;
  std::vector<CMatrix> blocks;
};

/// phi-hat(xi) = sum_{xH} mu * f(xH) * Gamma_xi(xH)^*.
FourierCoefficients forward_transform(const CosetFunction& f, const DualPtr& dual);

/// f(xH) = sum_xi d_xi Tr[F(xi) xi(x) T_H^xi].
CosetFunction inverse_transform(const FourierCoefficients& coeffs);

/// sqrt(sum_xi d_xi ||F(xi)||_{S2}^2).
double plancherel_norm(const FourierCoefficients& coeffs);

/// (sum mu |g|^q)^{1/q}; q = +infinity gives max |g|. Throws DomainError for q < 1.
double lq_norm(const CosetFunction& g, double q);

/// Same as lq_norm for a raw value vector with uniform weight 1/size.
double lq_norm(const std::vector<cplx>& values, double q);

}  // namespace cpsi
