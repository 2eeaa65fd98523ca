#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cpsi/group.hpp"

namespace cpsi {

/// Everything known about one group: the table, named subgroups, a complete
/// irrep catalog and (optionally) a default Laplacian generating multiset.
/// This is the in-memory form of a group spec document.
struct GroupSpec {
  GroupPtr group;
  std::vector<std::pair<std::string, Subgroup>> subgroups;
  std::vector<IrrepPtr> irreps;
  std::vector<int> laplacian_generators;

  /// Throws DomainError for an unknown name.
  const Subgroup& subgroup(const std::string& name) const;
  /// laplacian_generators, or every non-identity element when none are given.
  std::vector<int> generators_or_default() const;
};

/// Z1..Z24, D3..D12 (order 2n), S3, S4, Q8.
std::vector<std::string> builtin_group_names();

/// Throws DomainError for an unknown name.
GroupSpec builtin_group(const std::string& name);

}  // namespace cpsi
