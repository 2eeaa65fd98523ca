#pragma once

#include <vector>

#include "cpsi/quantize.hpp"

namespace cpsi {

/// s_n(T) for T acting on L^2(G/H, mu), nonincreasing, length N.
struct SingularSpectrum {
  std::vector<double> values;
  int dimension = 0;
};

/// Singular values of K / N (uniform mu makes the L^2(mu) and matrix SVD agree).
SingularSpectrum singular_values(const LinearOperator& t);

/// (sum s_n^r)^{1/r}; r = +infinity gives s_1. Throws DomainError for r <= 0.
double schatten_norm(const SingularSpectrum& s, double r);

/// sqrt(sum_x mu sum_xi d_xi ||sigma(x, xi) T_H^xi||_{S2}^2).
double hs_norm_via_symbol(const MatrixSymbol& sigma);

/// |T|^s with |T| = sqrt(T^* T).
LinearOperator fractional_modulus(const LinearOperator& t, double s);

struct SchattenReport {
  double r = 0.0;
  /// ||T||_{S_r}^r from the singular values.
  double quasi_norm = 0.0;
  /// squared L^2 norm of the symbol of |T|^{r/2}.
  double symbol_side = 0.0;
  /// |quasi_norm - symbol_side| / max(quasi_norm, tiny).
  double residual = 0.0;
};

SchattenReport schatten_criterion_check(const LinearOperator& t, const DualPtr& dual, double r);

}  // namespace cpsi
