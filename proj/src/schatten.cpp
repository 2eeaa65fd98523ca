#include "cpsi/schatten.hpp"

#include <cmath>
#include <limits>

#include "cpsi/linalg/decomp.hpp"

namespace cpsi {

SingularSpectrum singular_values(const LinearOperator& t) {
  const Svd s = svd(t.matrix());
  return SingularSpectrum{s.values, t.size()};
}

double schatten_norm(const SingularSpectrum& s, double r) {
  if (!(r > 0.0)) throw DomainError("schatten_norm: r must be positive (got " + std::to_string(r) + ")");
  if (s.values.empty()) return 0.0;
  if (std::isinf(r)) return s.values.front();
  double sum = 0.0;
  for (double v : s.values) sum += std::pow(v, r);
  return std::pow(sum, 1.0 / r);
}

double hs_norm_via_symbol(const MatrixSymbol& sigma) {
  const auto& dual = *sigma.dual;
  const double mu = sigma.space()->weight();
  double sum = 0.0;
  for (const auto& row : sigma.blocks)
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double f = (row[k] * dual.at(k).projector()).frobenius_norm();
      sum += mu * dual.at(k).dim() * f * f;
    }
  return std::sqrt(sum);
}

LinearOperator fractional_modulus(const LinearOperator& t, double s) {
  if (!(s > 0.0)) throw DomainError("fractional_modulus: exponent must be positive");
  const Svd d = svd(t.matrix());
  const std::size_t n = d.values.size();
  CMatrix vs = d.v;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = d.values[j] > 0.0 ? std::pow(d.values[j], s) : 0.0;
    for (std::size_t i = 0; i < n; ++i) vs(i, j) *= p;
  }
  return LinearOperator::from_matrix(t.space, vs * d.v.adjoint());
}

SchattenReport schatten_criterion_check(const LinearOperator& t, const DualPtr& dual, double r) {
  if (!(r > 0.0)) throw DomainError("schatten_criterion_check: r must be positive (got " + std::to_string(r) + ")");
  SchattenReport rep;
  rep.r = r;
  rep.quasi_norm = std::pow(schatten_norm(singular_values(t), r), r);
  const double hs = hs_norm_via_symbol(symbol_from_operator(fractional_modulus(t, r / 2.0), dual));
  rep.symbol_side = hs * hs;
  rep.residual = std::abs(rep.quasi_norm - rep.symbol_side) / std::max(rep.quasi_norm, std::numeric_limits<double>::min());
  return rep;
}

}  // namespace cpsi
