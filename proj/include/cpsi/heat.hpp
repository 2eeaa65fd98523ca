#pragma once

#include <vector>

#include "cpsi/quantize.hpp"

namespace cpsi {

/// L = |S| I - sum_{s in S} R_s on functions on G, for a symmetric,
/// conjugation-closed multiset S. By Schur's lemma L acts on the matrix
/// coefficients of xi by the scalar lambda_xi = |S| - chi_xi(S) / d_xi.
class BiInvariantLaplacian {
 public:
  BiInvariantLaplacian(GroupPtr group, std::vector<int> generators, std::vector<IrrepPtr> catalog);

  const FiniteGroup& group() const { return *group_; }
  const std::vector<int>& generators() const { return generators_; }
  const std::vector<IrrepPtr>& catalog() const { return catalog_; }
  /// lambda per catalog irrep, same order as catalog().
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  /// lambda for an irrep identified by label; throws DomainError if absent.
  double eigenvalue(const Irrep& irrep) const;
  /// max over classes of ||sum_s xi(s) - (chi(S)/d) I||_max.
  double schur_residual() const { return schur_residual_; }
  /// The |G| x |G| matrix |S| I - sum_s R_s (row g, column g s gets -1 per s).
  CMatrix group_matrix() const;

 private:
  GroupPtr group_;
  std::vector<int> generators_;
  std::vector<IrrepPtr> catalog_;
  std::vector<double> eigenvalues_;
  double schur_residual_ = 0.0;
};

/// Throws DomainError naming the first element whose inverse or conjugate is
/// missing from S (with multiplicity).
BiInvariantLaplacian laplacian_from_generators(GroupPtr group, std::vector<int> generators,
                                               std::vector<IrrepPtr> catalog);

/// (L f)(xH) = sum_s (f(xH) - f(x s H)), as a kernel operator on G/H.
LinearOperator descend_laplacian(const BiInvariantLaplacian& l, const SpacePtr& space);

/// Blocks e^{-t lambda_xi} T_H^xi, constant in xH. Throws DomainError for t < 0.
MatrixSymbol heat_symbol(const BiInvariantLaplacian& l, const DualPtr& dual, double t);

/// sum_xi d_xi e^{-t lambda_xi} Tr(T_H^xi). Throws DomainError for t < 0.
double heat_trace(const BiInvariantLaplacian& l, const DualPtr& dual, double t);

/// exp(-t L_{G/H}) from the eigendecomposition of the descended Laplacian.
LinearOperator heat_operator_oracle(const BiInvariantLaplacian& l, const SpacePtr& space, double t);

}  // namespace cpsi
