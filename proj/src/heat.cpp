#include "cpsi/heat.hpp"

#include <algorithm>
#include <cmath>

#include "cpsi/linalg/decomp.hpp"

namespace cpsi {

namespace {

std::string element_name(int g) { return "element " + std::to_string(g); }

void validate_generators(const FiniteGroup& g, const std::vector<int>& s) {
  std::vector<int> count(g.order(), 0);
  for (int x : s) {
    if (x < 0 || x >= g.order()) throw DomainError("generator index out of range: " + std::to_string(x));
    ++count[x];
  }
  for (int x = 0; x < g.order(); ++x) {
    if (count[x] == 0) continue;
    if (count[g.inverse(x)] != count[x])
      throw DomainError("generating set is not symmetric: inverse of " + element_name(x) + " missing");
    for (int y = 0; y < g.order(); ++y)
      if (count[g.conjugate(x, y)] != count[x])
        throw DomainError("generating set is not conjugation-closed: conjugate of " + element_name(x) + " by " +
                          element_name(y) + " missing");
  }
}

}  // namespace

BiInvariantLaplacian::BiInvariantLaplacian(GroupPtr group, std::vector<int> generators, std::vector<IrrepPtr> catalog)
    : group_(std::move(group)), generators_(std::move(generators)), catalog_(std::move(catalog)) {
  validate_generators(*group_, generators_);
  const double size = static_cast<double>(generators_.size());
  for (const auto& irrep : catalog_) {
    const auto d = static_cast<std::size_t>(irrep->dim);
    cplx chi = 0.0;
    CMatrix sum(d, d);
    for (int s : generators_) {
      chi += irrep->character[s];
      sum += irrep->matrices[s];
    }
    const cplx scalar = chi / static_cast<double>(d);
    schur_residual_ = std::max(schur_residual_, max_abs_diff(sum, CMatrix::identity(d) * scalar));
    if (std::abs(scalar.imag()) > 1e-12)
      throw NumericalError("Laplacian eigenvalue of " + irrep->label + " is not real");
    eigenvalues_.push_back(size - scalar.real());
  }
}

double BiInvariantLaplacian::eigenvalue(const Irrep& irrep) const {
  for (std::size_t i = 0; i < catalog_.size(); ++i)
    if (catalog_[i]->label == irrep.label) return eigenvalues_[i];
  throw DomainError("irrep " + irrep.label + " is not in the Laplacian catalog");
}

CMatrix BiInvariantLaplacian::group_matrix() const {
  const auto n = static_cast<std::size_t>(group_->order());
  CMatrix m = CMatrix::identity(n) * cplx(static_cast<double>(generators_.size()));
  for (std::size_t g = 0; g < n; ++g)
    for (int s : generators_) m(g, group_->multiply(static_cast<int>(g), s)) -= 1.0;
  return m;
}

BiInvariantLaplacian laplacian_from_generators(GroupPtr group, std::vector<int> generators,
                                               std::vector<IrrepPtr> catalog) {
  return BiInvariantLaplacian(std::move(group), std::move(generators), std::move(catalog));
}

LinearOperator descend_laplacian(const BiInvariantLaplacian& l, const SpacePtr& space) {
  if (&space->group() != &l.group() && space->group().cayley() != l.group().cayley())
    throw DomainError("descend_laplacian: coset space is over a different group");
  const int n = space->size();
  CMatrix m = CMatrix::identity(n) * cplx(static_cast<double>(l.generators().size()));
  for (int x = 0; x < n; ++x) {
    const int rep = space->representative(x);
    for (int s : l.generators()) m(x, space->coset_of(l.group().multiply(rep, s))) -= 1.0;
  }
  return LinearOperator::from_matrix(space, m);
}

MatrixSymbol heat_symbol(const BiInvariantLaplacian& l, const DualPtr& dual, double t) {
  if (!(t >= 0.0)) throw DomainError("heat_symbol: t must be nonnegative (got " + std::to_string(t) + ")");
  auto sigma = MatrixSymbol::identity(dual);
  for (std::size_t c = 0; c < dual->size(); ++c) {
    const double f = std::exp(-t * l.eigenvalue(dual->at(c).irrep()));
    for (auto& row : sigma.blocks) row[c] *= f;
  }
  return sigma;
}

double heat_trace(const BiInvariantLaplacian& l, const DualPtr& dual, double t) {
  if (!(t >= 0.0)) throw DomainError("heat_trace: t must be nonnegative (got " + std::to_string(t) + ")");
  double sum = 0.0;
  for (const auto& cls : dual->classes())
    sum += cls.dim() * std::exp(-t * l.eigenvalue(cls.irrep())) * cls.projector().trace().real();
  return sum;
}

LinearOperator heat_operator_oracle(const BiInvariantLaplacian& l, const SpacePtr& space, double t) {
  if (!(t >= 0.0)) throw DomainError("heat_operator_oracle: t must be nonnegative");
  const auto eig = hermitian_eigen(descend_laplacian(l, space).matrix());
  return LinearOperator::from_matrix(space, spectral_function(eig, [t](double v) { return std::exp(-t * v); }));
}

}  // namespace cpsi
