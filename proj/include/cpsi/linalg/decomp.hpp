#pragma once

#include <functional>
#include <vector>

#include "cpsi/linalg/matrix.hpp"

namespace cpsi {

/// Eigen-decomposition of a Hermitian matrix: a = vectors * diag(values) * vectors^*.
/// Values are sorted nonincreasing; vectors holds the matching eigenvectors as columns.
struct HermitianEigen {
  std::vector<double> values;
  CMatrix vectors;
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Stops when every off-diagonal magnitude is below
/// 1e-14 * ||a||_F, at most 100 sweeps (NumericalError otherwise). Only the
/// Hermitian part (a + a^*)/2 is used.
HermitianEigen hermitian_eigen(const CMatrix& a);

/// Singular value decomposition a = u * diag(values) * v^*.
/// Square or tall input; values nonincreasing, u is rows x cols with
/// orthonormal columns for nonzero singular values (zero columns otherwise).
struct Svd {
  CMatrix u;
  std::vector<double> values;
  CMatrix v;
  int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi: rotates column pairs of a until the implicit
/// Gram matrix a^*a is diagonal. Accurate for small singular values, since
/// a^*a is never formed.
Svd svd(const CMatrix& a);

/// Eigenvalues of a general square complex matrix (Householder reduction to
/// Hessenberg form, then Wilkinson-shifted complex QR). Order is unspecified.
std::vector<cplx> eigenvalues(const CMatrix& a);

/// vectors * diag(fn(values)) * vectors^*
CMatrix spectral_function(const HermitianEigen& eig, const std::function<double(double)>& fn);

}  // namespace cpsi
