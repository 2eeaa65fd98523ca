#include "cpsi/nuclear.hpp"

#include <cmath>
#include <limits>

#include "cpsi/linalg/decomp.hpp"
#include "cpsi/linalg/kernels.hpp"
#include "cpsi/schatten.hpp"

namespace cpsi {

LinearOperator NuclearDecomposition::reconstruct() const {
  const auto n = static_cast<std::size_t>(space->size());
  CMatrix k(n, n);
  for (const auto& t : terms)
    for (std::size_t x = 0; x < n; ++x) kernels::caxpy(t.h.values[x], t.g.values.data(), k.row(x).data(), n);
  return LinearOperator(space, std::move(k));
}

NuclearDecomposition NuclearDecomposition::adjoint() const {
  NuclearDecomposition out{space, {}, r, p1, p2};
  out.terms.reserve(terms.size());
  for (const auto& t : terms) out.terms.push_back({t.g.conj(), t.h.conj()});
  return out;
}

NuclearDecomposition kernel_factorization(const LinearOperator& t) {
  const Svd s = svd(t.kernel);
  NuclearDecomposition dec{t.space, {}, 1.0, 2.0, 2.0};
  const int n = t.size();
  const double cutoff = s.values.empty() ? 0.0 : 1e-12 * s.values.front();
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (!(s.values[k] > cutoff)) break;
    std::vector<cplx> h(n), g(n);
    for (int x = 0; x < n; ++x) {
      h[x] = s.values[k] * s.u(x, k);
      g[x] = std::conj(s.v(x, k));
    }
    dec.terms.push_back({CosetFunction(t.space, std::move(h)), CosetFunction(t.space, std::move(g))});
  }
  return dec;
}

void validate_indices(double r, double p1, double p2) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("exponent r must lie in (0, 1] (got " + std::to_string(r) + ")");
  if (!(p1 >= 1.0 && std::isfinite(p1))) throw DomainError("p1 must lie in [1, inf) (got " + std::to_string(p1) + ")");
  if (!(p2 >= 1.0 && std::isfinite(p2))) throw DomainError("p2 must lie in [1, inf) (got " + std::to_string(p2) + ")");
}

double decomposition_cost(const NuclearDecomposition& dec) {
  validate_indices(dec.r, dec.p1, dec.p2);
  const double p1c = dec.p1 == 1.0 ? std::numeric_limits<double>::infinity() : dec.p1 / (dec.p1 - 1.0);
  double cost = 0.0;
  for (const auto& t : dec.terms) cost += std::pow(lq_norm(t.g, p1c), dec.r) * std::pow(lq_norm(t.h, dec.p2), dec.r);
  return cost;
}

namespace {

// sigma(x, xi) = xi(x)^* sum_k a_k(x) B_k(xi)
MatrixSymbol assemble(const DualPtr& dual, const std::vector<const CosetFunction*>& a,
                      const std::vector<std::vector<CMatrix>>& b) {
  auto sigma = MatrixSymbol::zero(dual);
  const int n = dual->space()->size();
  for (std::size_t c = 0; c < dual->size(); ++c) {
    const auto& cls = dual->at(c);
    const std::size_t dd = static_cast<std::size_t>(cls.dim()) * cls.dim();
    for (int x = 0; x < n; ++x) {
      CMatrix acc(cls.dim(), cls.dim());
      for (std::size_t k = 0; k < a.size(); ++k) kernels::caxpy(a[k]->values[x], b[k][c].data(), acc.data(), dd);
      sigma.at(x, c) = cls.rep_matrix[x].adjoint() * acc;
    }
  }
  return sigma;
}

std::vector<CMatrix> adjoint_blocks(const FourierCoefficients& f) {
  std::vector<CMatrix> out;
  out.reserve(f.blocks.size());
  for (const auto& b : f.blocks) out.push_back(b.adjoint());
  return out;
}

}  // namespace

MatrixSymbol symbol_from_decomposition(const NuclearDecomposition& dec, const DualPtr& dual) {
  require_same_space(*dec.space, *dual->space(), "symbol_from_decomposition");
  std::vector<const CosetFunction*> a;
  std::vector<std::vector<CMatrix>> b;
  for (const auto& t : dec.terms) {
    a.push_back(&t.h);
    b.push_back(adjoint_blocks(forward_transform(t.g.conj(), dual)));
  }
  return assemble(dual, a, b);
}

double sufficiency_functional(const MatrixSymbol& sigma, double r, double p1, double p2) {
  validate_indices(r, p1, p2);
  const double pt = std::min(2.0, p1);
  const auto& dual = *sigma.dual;
  const int n = sigma.space()->size();
  double total = 0.0;
  for (std::size_t c = 0; c < dual.size(); ++c) {
    const double d = dual.at(c).dim();
    std::vector<cplx> norms(n);
    for (int x = 0; x < n; ++x) {
      // ||A^t||_{inf->inf} is the largest absolute column sum of A.
      const CMatrix& blk = sigma.at(x, c);
      double best = 0.0;
      for (std::size_t j = 0; j < blk.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < blk.rows(); ++i) col += std::abs(blk(i, j));
        best = std::max(best, col);
      }
      norms[x] = best;
    }
    total += std::pow(d, 2.0 + r / pt) * std::pow(lq_norm(norms, p2), r);
  }
  return total;
}

cplx nuclear_trace_via_symbol(const MatrixSymbol& sigma) {
  const auto& dual = *sigma.dual;
  cplx sum = 0.0;
  for (const auto& row : sigma.blocks)
    for (std::size_t c = 0; c < row.size(); ++c)
      sum += static_cast<double>(dual.at(c).dim()) * trace_product_adjoint(dual.at(c).projector(), row[c].adjoint());
  return sum * sigma.space()->weight();
}

cplx kernel_diagonal_trace(const LinearOperator& t) { return t.kernel.trace() * t.space->weight(); }

cplx eigenvalue_trace(const LinearOperator& t) {
  cplx sum = 0.0;
  for (const auto& e : eigenvalues(t.matrix())) sum += e;
  return sum;
}

LinearOperator adjoint_operator(const LinearOperator& t) { return LinearOperator(t.space, t.kernel.adjoint()); }

MatrixSymbol adjoint_symbol_via_decomposition(const NuclearDecomposition& dec, const DualPtr& dual) {
  require_same_space(*dec.space, *dual->space(), "adjoint_symbol_via_decomposition");
  std::vector<CosetFunction> gbar;
  std::vector<std::vector<CMatrix>> b;
  gbar.reserve(dec.terms.size());
  for (const auto& t : dec.terms) {
    gbar.push_back(t.g.conj());
    b.push_back(adjoint_blocks(forward_transform(t.h, dual)));
  }
  std::vector<const CosetFunction*> a;
  for (const auto& g : gbar) a.push_back(&g);
  return assemble(dual, a, b);
}

MatrixSymbol adjoint_symbol_via_resummation(const MatrixSymbol& sigma) {
  const auto& dual = *sigma.dual;
  const int n = sigma.space()->size();
  const double mu = sigma.space()->weight();
  // c(x, y) = sum_eta d_eta Tr[(eta(y) sigma(y, eta))^* Gamma_eta(x)]
  CMatrix c(n, n);
  for (std::size_t e = 0; e < dual.size(); ++e) {
    const auto& cls = dual.at(e);
    for (int y = 0; y < n; ++y) {
      const CMatrix a = cls.rep_matrix[y] * sigma.at(y, e);
      for (int x = 0; x < n; ++x) c(x, y) += static_cast<double>(cls.dim()) * trace_product_adjoint(cls.gamma[x], a);
    }
  }
  auto tau = MatrixSymbol::zero(sigma.dual);
  for (std::size_t k = 0; k < dual.size(); ++k) {
    const auto& cls = dual.at(k);
    const std::size_t dd = static_cast<std::size_t>(cls.dim()) * cls.dim();
    for (int x = 0; x < n; ++x) {
      CMatrix acc(cls.dim(), cls.dim());
      for (int y = 0; y < n; ++y) kernels::caxpy(mu * c(x, y), cls.gamma[y].data(), acc.data(), dd);
      tau.at(x, k) = cls.rep_matrix[x].adjoint() * acc;
    }
  }
  return tau;
}

SelfAdjointness self_adjointness_check(const LinearOperator& t, const DualPtr& dual, double tol) {
  const auto sigma = symbol_from_operator(t, dual);
  const auto tau = adjoint_symbol_via_resummation(sigma);
  SelfAdjointness out;
  out.residual = max_abs_diff(sigma, tau);
  out.self_adjoint = out.residual < tol;
  return out;
}

MatrixSymbol product_symbol(const MatrixSymbol& sigma_s, const NuclearDecomposition& dec_t) {
  require_same_space(*sigma_s.space(), *dec_t.space, "product_symbol");
  std::vector<CosetFunction> hp;
  std::vector<std::vector<CMatrix>> b;
  hp.reserve(dec_t.terms.size());
  for (const auto& t : dec_t.terms) {
    hp.push_back(apply_symbol(sigma_s, t.h));
    b.push_back(adjoint_blocks(forward_transform(t.g.conj(), sigma_s.dual)));
  }
  std::vector<const CosetFunction*> a;
  for (const auto& h : hp) a.push_back(&h);
  return assemble(sigma_s.dual, a, b);
}

NuclearityReport nuclearity_report(const LinearOperator& t, const DualPtr& dual, double r, double p1, double p2) {
  validate_indices(r, p1, p2);
  NuclearityReport rep;
  const auto sigma = symbol_from_operator(t, dual);
  auto dec = kernel_factorization(t);
  dec.r = r;
  dec.p1 = p1;
  dec.p2 = p2;
  rep.functional = sufficiency_functional(sigma, r, p1, p2);
  rep.cost = decomposition_cost(dec);
  rep.terms = static_cast<int>(dec.terms.size());
  rep.trace_kernel = kernel_diagonal_trace(t);
  rep.trace_symbol = nuclear_trace_via_symbol(sigma);
  rep.trace_eigen = eigenvalue_trace(t);
  const double scale = std::max(schatten_norm(singular_values(t), 1.0), std::numeric_limits<double>::min());
  rep.residual_kernel_symbol = std::abs(rep.trace_kernel - rep.trace_symbol) / scale;
  rep.residual_kernel_eigen = std::abs(rep.trace_kernel - rep.trace_eigen) / scale;
  rep.residual_symbol_eigen = std::abs(rep.trace_symbol - rep.trace_eigen) / scale;
  return rep;
}

}  // namespace cpsi
