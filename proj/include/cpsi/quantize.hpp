#pragma once

#include <vector>

#include "cpsi/dual.hpp"
#include "cpsi/fourier.hpp"
#include "cpsi/random.hpp"

namespace cpsi {

/// sigma(xH, xi) for every coset and dual class, blocks[coset][class].
///
/// A block stores pi(x)^* (T Gamma_pi)(xH). Quantization reads pi(x) sigma.
/// For normal H and for G-equivariant operators the blocks are also fixed by
/// T_H on the left; left_absorption_residual measures the difference.
struct MatrixSymbol {
  MatrixSymbol(DualPtr dual, std::vector<std::vector<CMatrix>> blocks);
  static MatrixSymbol zero(DualPtr dual);
  /// sigma(xH, xi) = T_H^xi.
  static MatrixSymbol identity(DualPtr dual);

  DualPtr dual;
  std::vector<std::vector<CMatrix>> blocks;

  const SpacePtr& space() const { return dual->space(); }
  const CMatrix& at(int coset, std::size_t cls) const { return blocks[coset][cls]; }
  CMatrix& at(int coset, std::size_t cls) { return blocks[coset][cls]; }

  /// max ||T sigma - sigma||_F over all blocks.
  double left_absorption_residual() const;
  /// max ||sigma T - sigma||_F over all blocks.
  double right_absorption_residual() const;
  /// Canonical symbols satisfy sigma T = sigma; this returns sigma T.
  MatrixSymbol canonical() const;

  MatrixSymbol scaled(cplx c) const;
};

double max_abs_diff(const MatrixSymbol& a, const MatrixSymbol& b);
/// max over blocks of ||block||_max.
double max_abs(const MatrixSymbol& s);

/// A linear operator on L^2(G/H, mu) with kernel K: (Tf)(x) = sum_w mu K(x, w) f(w).
struct LinearOperator {
  LinearOperator(SpacePtr space, CMatrix kernel);
  static LinearOperator identity(SpacePtr space);

  SpacePtr space;
  CMatrix kernel;

  int size() const { return static_cast<int>(kernel.rows()); }
  /// The matrix of T in the coset basis: K / N.
  CMatrix matrix() const;
  static LinearOperator from_matrix(SpacePtr space, const CMatrix& m);
};

/// Kernel composition sum_y mu K_S(x, y) K_T(y, w).
LinearOperator compose(const LinearOperator& s, const LinearOperator& t);

CosetFunction apply(const LinearOperator& t, const CosetFunction& f);

/// K(x, w) = sum_xi d_xi Tr[pi(x) sigma(x, xi) Gamma_xi(w)^*].
LinearOperator op_from_symbol(const MatrixSymbol& sigma);

/// The quantization formula read literally with Gamma_xi(x) sigma(x, xi).
/// Agrees with op_from_symbol whenever T_H sigma = sigma.
LinearOperator op_from_symbol_literal(const MatrixSymbol& sigma);

/// (Tf)(x) = sum_xi d_xi Tr[pi(x) sigma(x, xi) f^(xi)].
CosetFunction apply_symbol(const MatrixSymbol& sigma, const CosetFunction& f);

/// sigma(x, pi) = pi(x)^* (T Gamma_pi)(xH).
MatrixSymbol symbol_from_operator(const LinearOperator& t, const DualPtr& dual);

/// Complex Gaussian kernel entries.
LinearOperator random_operator(const SpacePtr& space, SplitMix64& rng);
/// Random canonical symbol (sigma T = sigma).
MatrixSymbol random_symbol(const DualPtr& dual, SplitMix64& rng);
CosetFunction random_function(const SpacePtr& space, SplitMix64& rng);

}  // namespace cpsi
