#include "cpsi/quantize.hpp"

#include <algorithm>

#include "cpsi/linalg/kernels.hpp"

namespace cpsi {

MatrixSymbol::MatrixSymbol(DualPtr dual_, std::vector<std::vector<CMatrix>> blocks_)
    : dual(std::move(dual_)), blocks(std::move(blocks_)) {
  if (!dual) throw DomainError("MatrixSymbol: missing dual object");
  if (static_cast<int>(blocks.size()) != dual->space()->size())
    throw DomainError("MatrixSymbol: one row of blocks per coset expected");
  for (const auto& row : blocks) {
    if (row.size() != dual->size()) throw DomainError("MatrixSymbol: one block per dual class expected");
    for (std::size_t k = 0; k < row.size(); ++k) {
      const auto d = static_cast<std::size_t>(dual->at(k).dim());
      if (row[k].rows() != d || row[k].cols() != d) throw DomainError("MatrixSymbol: block has the wrong shape");
    }
  }
}

MatrixSymbol MatrixSymbol::zero(DualPtr dual) {
  std::vector<CMatrix> row;
  for (const auto& c : dual->classes()) row.emplace_back(c.dim(), c.dim());
  std::vector<std::vector<CMatrix>> blocks(dual->space()->size(), row);
  return MatrixSymbol(std::move(dual), std::move(blocks));
}

MatrixSymbol MatrixSymbol::identity(DualPtr dual) {
  std::vector<CMatrix> row;
  for (const auto& c : dual->classes()) row.push_back(c.projector());
  std::vector<std::vector<CMatrix>> blocks(dual->space()->size(), row);
  return MatrixSymbol(std::move(dual), std::move(blocks));
}

double MatrixSymbol::left_absorption_residual() const {
  double r = 0.0;
  for (const auto& row : blocks)
    for (std::size_t k = 0; k < row.size(); ++k)
      r = std::max(r, (dual->at(k).projector() * row[k] - row[k]).frobenius_norm());
  return r;
}

double MatrixSymbol::right_absorption_residual() const {
  double r = 0.0;
  for (const auto& row : blocks)
    for (std::size_t k = 0; k < row.size(); ++k)
      r = std::max(r, (row[k] * dual->at(k).projector() - row[k]).frobenius_norm());
  return r;
}

MatrixSymbol MatrixSymbol::canonical() const {
  auto out = blocks;
  for (auto& row : out)
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = row[k] * dual->at(k).projector();
  return MatrixSymbol(dual, std::move(out));
}

MatrixSymbol MatrixSymbol::scaled(cplx c) const {
  auto out = blocks;
  for (auto& row : out)
    for (auto& b : row) b *= c;
  return MatrixSymbol(dual, std::move(out));
}

double max_abs_diff(const MatrixSymbol& a, const MatrixSymbol& b) {
  require_same_space(*a.space(), *b.space(), "max_abs_diff");
  double r = 0.0;
  for (std::size_t x = 0; x < a.blocks.size(); ++x)
    for (std::size_t k = 0; k < a.blocks[x].size(); ++k) r = std::max(r, max_abs_diff(a.blocks[x][k], b.blocks[x][k]));
  return r;
}

double max_abs(const MatrixSymbol& s) {
  double r = 0.0;
  for (const auto& row : s.blocks)
    for (const auto& b : row) r = std::max(r, b.max_abs());
  return r;
}

LinearOperator::LinearOperator(SpacePtr space_, CMatrix kernel_) : space(std::move(space_)), kernel(std::move(kernel_)) {
  if (!space) throw DomainError("LinearOperator: missing coset space");
  const auto n = static_cast<std::size_t>(space->size());
  if (kernel.rows() != n || kernel.cols() != n)
    throw DomainError("LinearOperator: kernel must be " + std::to_string(n) + "x" + std::to_string(n));
}

LinearOperator LinearOperator::identity(SpacePtr space) {
  const auto n = static_cast<std::size_t>(space->size());
  return LinearOperator(space, CMatrix::identity(n) * cplx(static_cast<double>(n)));
}

CMatrix LinearOperator::matrix() const { return kernel * cplx(space->weight()); }

LinearOperator LinearOperator::from_matrix(SpacePtr space, const CMatrix& m) {
  const double n = static_cast<double>(space->size());
  return LinearOperator(space, m * cplx(n));
}

LinearOperator compose(const LinearOperator& s, const LinearOperator& t) {
  require_same_space(*s.space, *t.space, "compose");
  return LinearOperator(s.space, (s.kernel * t.kernel) * cplx(s.space->weight()));
}

CosetFunction apply(const LinearOperator& t, const CosetFunction& f) {
  require_same_space(*t.space, *f.space, "apply");
  const int n = t.size();
  std::vector<cplx> out(n);
  for (int x = 0; x < n; ++x) {
    cplx acc = 0.0;
    for (int w = 0; w < n; ++w) acc += t.kernel(x, w) * f.values[w];
    out[x] = acc * t.space->weight();
  }
  return CosetFunction(t.space, std::move(out));
}

namespace {

LinearOperator quantize(const MatrixSymbol& sigma, bool literal) {
  const auto& dual = *sigma.dual;
  const int n = sigma.space()->size();
  CMatrix k(n, n);
  for (std::size_t c = 0; c < dual.size(); ++c) {
    const auto& cls = dual.at(c);
    const double d = cls.dim();
    for (int x = 0; x < n; ++x) {
      const CMatrix left = (literal ? cls.gamma[x] : cls.rep_matrix[x]) * sigma.at(x, c);
      for (int w = 0; w < n; ++w) k(x, w) += d * trace_product_adjoint(left, cls.gamma[w]);
    }
  }
  return LinearOperator(sigma.space(), std::move(k));
}

}  // namespace

LinearOperator op_from_symbol(const MatrixSymbol& sigma) { return quantize(sigma, false); }

LinearOperator op_from_symbol_literal(const MatrixSymbol& sigma) { return quantize(sigma, true); }

CosetFunction apply_symbol(const MatrixSymbol& sigma, const CosetFunction& f) {
  const auto coeffs = forward_transform(f, sigma.dual);
  const auto& dual = *sigma.dual;
  const int n = sigma.space()->size();
  std::vector<cplx> out(n, 0.0);
  for (std::size_t c = 0; c < dual.size(); ++c) {
    const auto& cls = dual.at(c);
    for (int x = 0; x < n; ++x) {
      const CMatrix m = cls.rep_matrix[x] * sigma.at(x, c) * coeffs.blocks[c];
      out[x] += static_cast<double>(cls.dim()) * m.trace();
    }
  }
  return CosetFunction(sigma.space(), std::move(out));
}

MatrixSymbol symbol_from_operator(const LinearOperator& t, const DualPtr& dual) {
  require_same_space(*t.space, *dual->space(), "symbol_from_operator");
  const int n = t.size();
  const double mu = t.space->weight();
  std::vector<std::vector<CMatrix>> blocks(n);
  for (int x = 0; x < n; ++x) {
    blocks[x].reserve(dual->size());
    for (const auto& cls : dual->classes()) {
      const auto d = static_cast<std::size_t>(cls.dim());
      // (T Gamma)(xH) = sum_w mu K(x, w) Gamma(wH)
      CMatrix tg(d, d);
      for (int w = 0; w < n; ++w) kernels::caxpy(mu * t.kernel(x, w), cls.gamma[w].data(), tg.data(), d * d);
      blocks[x].push_back(cls.rep_matrix[x].adjoint() * tg);
    }
  }
  return MatrixSymbol(dual, std::move(blocks));
}

LinearOperator random_operator(const SpacePtr& space, SplitMix64& rng) {
  const auto n = static_cast<std::size_t>(space->size());
  CMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i, j) = rng.complex_normal();
  return LinearOperator(space, std::move(k));
}

MatrixSymbol random_symbol(const DualPtr& dual, SplitMix64& rng) {
  auto s = MatrixSymbol::zero(dual);
  for (auto& row : s.blocks)
    for (auto& b : row)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = rng.complex_normal();
  return s.canonical();
}

CosetFunction random_function(const SpacePtr& space, SplitMix64& rng) {
  std::vector<cplx> v(space->size());
  for (auto& z : v) z = rng.complex_normal();
  return CosetFunction(space, std::move(v));
}

}  // namespace cpsi
