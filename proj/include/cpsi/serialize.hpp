#pragma once

#include <string>

#include <json.hpp>

#include "cpsi/catalog.hpp"
#include "cpsi/fourier.hpp"
#include "cpsi/quantize.hpp"

namespace cpsi {

/// Insertion-ordered JSON, so documents are written with a fixed field order.
using Json = nlohmann::ordered_json;

/// Complex numbers are written as [re, im].
Json to_json(cplx z);
Json to_json(const CMatrix& m);
cplx complex_from_json(const Json& j);
/// Throws DomainError unless j is a rows x cols array of [re, im] pairs.
CMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

/// {name, order, cayley, subgroups, irreps[, laplacian_generators]}
Json to_json(const GroupSpec& spec);
/// Schema problems throw GroupError("malformed group document: ..."); table
/// problems throw GroupError naming the violated axiom.
GroupSpec group_spec_from_json(const Json& j);
GroupSpec load_group_file(const std::string& path);

/// {size, values}
Json to_json(const CosetFunction& f);
CosetFunction coset_function_from_json(const Json& j, const SpacePtr& space);

/// {classes: [{label, dim, block}]}
Json to_json(const FourierCoefficients& f);
FourierCoefficients fourier_from_json(const Json& j, const DualPtr& dual);

/// {size, classes: [{label, dim, rank, blocks: one per coset}]}
Json to_json(const MatrixSymbol& s);
MatrixSymbol symbol_from_json(const Json& j, const DualPtr& dual);

/// {size, kernel}
Json kernel_to_json(const LinearOperator& t);
LinearOperator kernel_from_json(const Json& j, const SpacePtr& space);

/// Reads and parses a JSON file; throws DomainError on I/O or parse failure.
Json read_json_file(const std::string& path);

}  // namespace cpsi
