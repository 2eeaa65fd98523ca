#pragma once

#include <memory>
#include <vector>

#include "cpsi/coset_space.hpp"

namespace cpsi {

/// T_H^pi = (1/|H|) sum_{h in H} pi(h): the orthogonal projection onto the
/// H-fixed vectors of pi.
struct HProjection {
  IrrepPtr irrep;
  CMatrix matrix;
  int rank = 0;
};

HProjection h_projection(const Subgroup& h, IrrepPtr irrep);

/// Frobenius threshold above which a projection counts as nonzero.
inline constexpr double kDualTolerance = 1e-8;

/// The classes of G whose H-projection is nonzero, ordered by (dim, label),
/// together with the cached matrices pi(rep(xH)) and Gamma_pi(xH) = pi(rep) T_H^pi
/// for every coset.
class DualObject {
 public:
  struct Class {
    HProjection projection;
    std::vector<CMatrix> rep_matrix;  // pi(rep(xH)) per coset
    std::vector<CMatrix> gamma;       // pi(rep(xH)) T_H^pi per coset

    const Irrep& irrep() const { return *projection.irrep; }
    int dim() const { return projection.irrep->dim; }
    const CMatrix& projector() const { return projection.matrix; }
  };

  DualObject(SpacePtr space, std::vector<HProjection> classes);

  const SpacePtr& space() const { return space_; }
  const std::vector<Class>& classes() const { return classes_; }
  const Class& at(std::size_t i) const { return classes_[i]; }
  std::size_t size() const { return classes_.size(); }
  /// Index of the trivial class, or -1.
  int trivial_index() const;
  /// sum_xi d_xi * rank(T_H^xi); equals [G:H].
  int dimension_count() const;

  /// Same classes with each irrep conjugated by a unitary U so that
  /// U^* T_H U = diag(1, ..., 1, 0, ..., 0).
  DualObject adapted() const;

 private:
  SpacePtr space_;
  std::vector<Class> classes_;
};

using DualPtr = std::shared_ptr<const DualObject>;

/// Throws DomainError if the catalog is incomplete (sum d^2 != |G|), naming
/// the deficit.
DualPtr dual_object(const SpacePtr& space, const std::vector<IrrepPtr>& catalog);

/// Gamma_pi(xH) = pi(x) T_H^pi for the representative x of the coset.
CMatrix gamma(const HProjection& t, const CosetSpace& space, int coset);

}  // namespace cpsi
