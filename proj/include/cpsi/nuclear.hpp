#pragma once

#include <utility>
#include <vector>

#include "cpsi/quantize.hpp"

namespace cpsi {

/// A finite factorization K(x, y) = sum_k h_k(x) g_k(y), with the exponent r
/// and Lebesgue indices p1, p2 used by decomposition_cost.
struct NuclearDecomposition {
  struct Term {
    CosetFunction h;
    CosetFunction g;
  };

  SpacePtr space;
  std::vector<Term> terms;
  double r = 1.0;
  double p1 = 2.0;
  double p2 = 2.0;

  /// Kernel sum_k h_k(x) g_k(y).
  LinearOperator reconstruct() const;
  /// Terms (conj g_k, conj h_k): a factorization of the adjoint kernel.
  NuclearDecomposition adjoint() const;
};

/// SVD of the kernel: h_k = s_k u_k, g_k = conj(v_k); terms with
/// s_k <= 1e-12 s_max are dropped.
NuclearDecomposition kernel_factorization(const LinearOperator& t);

/// Throws DomainError unless r in (0, 1] and p in [1, inf).
void validate_indices(double r, double p1, double p2);

/// sum_k ||g_k||_{L^{p1'}}^r ||h_k||_{L^{p2}}^r, with p1' = inf for p1 = 1.
double decomposition_cost(const NuclearDecomposition& dec);

/// sigma(x, xi) = xi(x)^* sum_k h_k(x) (g-bar_k^(xi))^*.
MatrixSymbol symbol_from_decomposition(const NuclearDecomposition& dec, const DualPtr& dual);

/// sum_xi d_xi^{2 + r / min(2, p1)} || x -> ||sigma(x, xi)^t||_{inf->inf} ||_{L^{p2}}^r.
double sufficiency_functional(const MatrixSymbol& sigma, double r, double p1, double p2);

/// sum_x mu sum_xi d_xi Tr(T_H^xi sigma(x, xi)).
cplx nuclear_trace_via_symbol(const MatrixSymbol& sigma);
/// sum_x mu K(x, x).
cplx kernel_diagonal_trace(const LinearOperator& t);
/// Sum of the eigenvalues of K / N.
cplx eigenvalue_trace(const LinearOperator& t);

/// K^*(x, y) = conj K(y, x).
LinearOperator adjoint_operator(const LinearOperator& t);

/// tau(x, xi) = xi(x)^* sum_k conj g_k(x) (h_k^(xi))^*.
MatrixSymbol adjoint_symbol_via_decomposition(const NuclearDecomposition& dec, const DualPtr& dual);

/// tau(x, xi) = xi(x)^* sum_eta d_eta sum_y mu Tr[(eta(y) sigma(y, eta))^* Gamma_eta(x)] Gamma_xi(y).
MatrixSymbol adjoint_symbol_via_resummation(const MatrixSymbol& sigma);

struct SelfAdjointness {
  bool self_adjoint = false;
  /// max |sigma_T - tau| over the blocks.
  double residual = 0.0;
};

SelfAdjointness self_adjointness_check(const LinearOperator& t, const DualPtr& dual, double tol = 1e-9);

/// lambda(x, xi) = xi(x)^* sum_k h'_k(x) (g-bar_k^(xi))^* with
/// h'_k(x) = sum_eta d_eta Tr[eta(x) sigma_S(x, eta) h_k^(eta)].
MatrixSymbol product_symbol(const MatrixSymbol& sigma_s, const NuclearDecomposition& dec_t);

struct NuclearityReport {
  double functional = 0.0;
  double cost = 0.0;
  cplx trace_kernel;
  cplx trace_symbol;
  cplx trace_eigen;
  /// |pairwise difference| / max(||T||_{S1}, tiny)
  double residual_kernel_symbol = 0.0;
  double residual_kernel_eigen = 0.0;
  double residual_symbol_eigen = 0.0;
  int terms = 0;
};

NuclearityReport nuclearity_report(const LinearOperator& t, const DualPtr& dual, double r, double p1, double p2);

}  // namespace cpsi
