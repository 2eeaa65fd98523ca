#pragma once

#include <memory>
#include <vector>

#include "cpsi/group.hpp"

namespace cpsi {

/// The left coset space G/H with its normalized G-invariant measure
/// mu = 1/[G:H] per coset. Coset i is represented by the smallest element
/// index it contains, and cosets are numbered in increasing representative order.
class CosetSpace {
 public:
  explicit CosetSpace(Subgroup subgroup);

  const FiniteGroup& group() const { return subgroup_.parent(); }
  const GroupPtr& group_ptr() const { return subgroup_.parent_ptr(); }
  const Subgroup& subgroup() const { return subgroup_; }

  int size() const { return static_cast<int>(representatives_.size()); }
  double weight() const { return 1.0 / static_cast<double>(size()); }
  int representative(int coset) const { return representatives_[coset]; }
  const std::vector<int>& representatives() const { return representatives_; }
  int coset_of(int element) const { return coset_of_[element]; }
  /// Index of the coset g * (coset), i.e. the left action of G on G/H.
  int translate(int g, int coset) const;

  bool same_as(const CosetSpace& other) const;

 private:
  Subgroup subgroup_;
  std::vector<int> representatives_;
  std::vector<int> coset_of_;
};

using SpacePtr = std::shared_ptr<const CosetSpace>;

SpacePtr coset_space(const Subgroup& h);

/// A complex function on G/H, one value per coset.
struct CosetFunction {
  CosetFunction(SpacePtr space, std::vector<cplx> values);
  static CosetFunction constant(SpacePtr space, cplx c);
  static CosetFunction indicator(SpacePtr space, int coset);

  SpacePtr space;
  std::vector<cplx> values;

  int size() const { return static_cast<int>(values.size()); }
  CosetFunction conj() const;
};

/// T_H f (xH) = (1/|H|) sum_h f(xh), for f given by its |G| values.
CosetFunction average_over_H(const SpacePtr& space, const std::vector<cplx>& f);

/// Throws DomainError unless a and b describe the same coset space.
void require_same_space(const CosetSpace& a, const CosetSpace& b, const char* where);

}  // namespace cpsi
