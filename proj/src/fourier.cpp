#include "cpsi/fourier.hpp"

#include <cmath>
#include <limits>

#include "cpsi/linalg/kernels.hpp"

namespace cpsi {

FourierCoefficients::FourierCoefficients(DualPtr dual_, std::vector<CMatrix> blocks_)
    : dual(std::move(dual_)), blocks(std::move(blocks_)) {
  if (!dual) throw DomainError("FourierCoefficients: missing dual object");
  if (blocks.size() != dual->size()) throw DomainError("FourierCoefficients: one block per dual class expected");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto d = static_cast<std::size_t>(dual->at(i).dim());
    if (blocks[i].rows() != d || blocks[i].cols() != d)
      throw DomainError("FourierCoefficients: block " + std::to_string(i) + " has the wrong shape");
  }
}

FourierCoefficients FourierCoefficients::zero(DualPtr dual) {
  std::vector<CMatrix> blocks;
  for (const auto& c : dual->classes()) blocks.emplace_back(c.dim(), c.dim());
  return FourierCoefficients(std::move(dual), std::move(blocks));
}

FourierCoefficients forward_transform(const CosetFunction& f, const DualPtr& dual) {
  require_same_space(*f.space, *dual->space(), "forward_transform");
  const double mu = f.space->weight();
  std::vector<CMatrix> blocks;
  blocks.reserve(dual->size());
  for (const auto& c : dual->classes()) {
    const auto d = static_cast<std::size_t>(c.dim());
    // Accumulate sum f(x) Gamma(x) first, then take the adjoint once.
    CMatrix acc(d, d);
    for (int x = 0; x < f.size(); ++x) kernels::caxpy(std::conj(f.values[x]) * mu, c.gamma[x].data(), acc.data(), d * d);
    blocks.push_back(acc.adjoint());
  }
  return FourierCoefficients(dual, std::move(blocks));
}

CosetFunction inverse_transform(const FourierCoefficients& coeffs) {
  const auto& dual = *coeffs.dual;
  const SpacePtr& space = dual.space();
  std::vector<cplx> values(space->size(), 0.0);
  for (std::size_t k = 0; k < dual.size(); ++k) {
    const auto& c = dual.at(k);
    // Tr[F Gamma(x)] = sum_ij F_ij Gamma_ji = sum_ij (F^T)_ji Gamma_ji
    const CMatrix ft = coeffs.blocks[k].transpose().conj();
    for (int x = 0; x < space->size(); ++x) {
      const cplx tr = kernels::cdotc(ft.data(), c.gamma[x].data(), ft.rows() * ft.cols());
      values[x] += static_cast<double>(c.dim()) * tr;
    }
  }
  return CosetFunction(space, std::move(values));
}

double plancherel_norm(const FourierCoefficients& coeffs) {
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs.blocks.size(); ++k) {
    const double f = coeffs.blocks[k].frobenius_norm();
    sum += coeffs.dual->at(k).dim() * f * f;
  }
  return std::sqrt(sum);
}

double lq_norm(const std::vector<cplx>& values, double q) {
  if (!(q >= 1.0)) throw DomainError("lq_norm: q must be >= 1 (got " + std::to_string(q) + ")");
  if (values.empty()) return 0.0;
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (const auto& v : values) sum += std::pow(std::abs(v), q);
  return std::pow(sum / static_cast<double>(values.size()), 1.0 / q);
}

double lq_norm(const CosetFunction& g, double q) { return lq_norm(g.values, q); }

}  // namespace cpsi
