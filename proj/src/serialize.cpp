#include "cpsi/serialize.hpp"

#include <fstream>
#include <sstream>

namespace cpsi {

namespace {

template <class E>
[[noreturn]] void fail(const std::string& what) {
  throw E(what);
}

template <class E>
const Json& field(const Json& j, const char* name, const char* doc) {
  if (!j.is_object()) fail<E>(std::string("malformed ") + doc + " document: expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail<E>(std::string("malformed ") + doc + " document: missing field '" + name + "'");
  return *it;
}

template <class E>
int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail<E>(std::string(what) + ": expected an integer");
  return j.get<int>();
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DomainError("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw DomainError("matrix must have " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw DomainError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const GroupSpec& spec) {
  const auto& g = *spec.group;
  Json out;
  out["name"] = g.name();
  out["order"] = g.order();
  out["cayley"] = g.cayley();
  Json subs = Json::object();
  for (const auto& [name, h] : spec.subgroups) subs[name] = h.elements();
  out["subgroups"] = std::move(subs);
  Json irreps = Json::array();
  for (const auto& rep : spec.irreps) {
    Json mats = Json::array();
    for (const auto& m : rep->matrices) mats.push_back(to_json(m));
    irreps.push_back(Json{{"label", rep->label}, {"dim", rep->dim}, {"matrices", std::move(mats)}});
  }
  out["irreps"] = std::move(irreps);
  if (!spec.laplacian_generators.empty()) out["laplacian_generators"] = spec.laplacian_generators;
  return out;
}

GroupSpec group_spec_from_json(const Json& j) {
  constexpr const char* doc = "group";
  const Json& name = field<GroupError>(j, "name", doc);
  if (!name.is_string()) fail<GroupError>("malformed group document: 'name' must be a string");
  const int order = as_int<GroupError>(field<GroupError>(j, "order", doc), "malformed group document: 'order'");
  if (order <= 0) fail<GroupError>("malformed group document: 'order' must be positive");

  const Json& cj = field<GroupError>(j, "cayley", doc);
  if (!cj.is_array() || static_cast<int>(cj.size()) != order)
    fail<GroupError>("malformed table: cayley must have 'order' rows");
  std::vector<std::vector<int>> cayley;
  for (const auto& row : cj) {
    if (!row.is_array() || static_cast<int>(row.size()) != order)
      fail<GroupError>("malformed table: every cayley row must have 'order' entries");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(as_int<GroupError>(v, "malformed table: cayley entry"));
    cayley.push_back(std::move(r));
  }
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>(name.get<std::string>(), std::move(cayley));

  const Json& sj = field<GroupError>(j, "subgroups", doc);
  if (!sj.is_object()) fail<GroupError>("malformed group document: 'subgroups' must map names to element lists");
  for (const auto& [sname, elems] : sj.items()) {
    if (!elems.is_array()) fail<GroupError>("malformed group document: subgroup '" + sname + "' must be a list");
    std::vector<int> e;
    for (const auto& v : elems) e.push_back(as_int<GroupError>(v, "malformed group document: subgroup element"));
    spec.subgroups.emplace_back(sname, Subgroup(spec.group, std::move(e)));
  }

  const Json& ij = field<GroupError>(j, "irreps", doc);
  if (!ij.is_array()) fail<GroupError>("malformed group document: 'irreps' must be a list");
  for (const auto& rj : ij) {
    const Json& label = field<GroupError>(rj, "label", "irrep");
    if (!label.is_string()) fail<GroupError>("malformed irrep: 'label' must be a string");
    const int dim = as_int<GroupError>(field<GroupError>(rj, "dim", "irrep"), "malformed irrep: 'dim'");
    if (dim <= 0) fail<GroupError>("malformed irrep: 'dim' must be positive");
    const Json& mj = field<GroupError>(rj, "matrices", "irrep");
    if (!mj.is_array() || static_cast<int>(mj.size()) != order)
      fail<GroupError>("malformed irrep '" + label.get<std::string>() + "': one matrix per element expected");
    std::vector<CMatrix> mats;
    try {
      for (const auto& m : mj) mats.push_back(matrix_from_json(m, dim, dim));
    } catch (const DomainError& e) {
      fail<GroupError>("malformed irrep '" + label.get<std::string>() + "': " + e.what());
    }
    spec.irreps.push_back(std::make_shared<const Irrep>(label.get<std::string>(), dim, std::move(mats)));
  }

  if (auto it = j.find("laplacian_generators"); it != j.end()) {
    if (!it->is_array()) fail<GroupError>("malformed group document: 'laplacian_generators' must be a list");
    for (const auto& v : *it) {
      const int s = as_int<GroupError>(v, "malformed group document: Laplacian generator");
      if (s < 0 || s >= order) fail<GroupError>("malformed group document: Laplacian generator out of range");
      spec.laplacian_generators.push_back(s);
    }
  }
  return spec;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("cannot parse " + path + ": " + e.what());
  }
}

GroupSpec load_group_file(const std::string& path) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const DomainError& e) {
    throw GroupError(e.what());
  }
  return group_spec_from_json(j);
}

Json to_json(const CosetFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values) values.push_back(to_json(v));
  Json out;
  out["size"] = f.size();
  out["values"] = std::move(values);
  return out;
}

CosetFunction coset_function_from_json(const Json& j, const SpacePtr& space) {
  const int n = as_int<DomainError>(field<DomainError>(j, "size", "function"), "function size");
  if (n != space->size()) throw DomainError("function size " + std::to_string(n) + " does not match " +
                                            std::to_string(space->size()) + " cosets");
  const Json& vj = field<DomainError>(j, "values", "function");
  if (!vj.is_array() || static_cast<int>(vj.size()) != n) throw DomainError("function must have 'size' values");
  std::vector<cplx> v;
  for (const auto& z : vj) v.push_back(complex_from_json(z));
  return CosetFunction(space, std::move(v));
}

Json to_json(const FourierCoefficients& f) {
  Json classes = Json::array();
  for (std::size_t k = 0; k < f.blocks.size(); ++k) {
    const auto& c = f.dual->at(k);
    classes.push_back(Json{{"label", c.irrep().label}, {"dim", c.dim()}, {"block", to_json(f.blocks[k])}});
  }
  Json out;
  out["classes"] = std::move(classes);
  return out;
}

FourierCoefficients fourier_from_json(const Json& j, const DualPtr& dual) {
  const Json& cj = field<DomainError>(j, "classes", "Fourier");
  if (!cj.is_array() || cj.size() != dual->size())
    throw DomainError("Fourier document must list " + std::to_string(dual->size()) + " classes");
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const auto& c = dual->at(k);
    const Json& label = field<DomainError>(cj[k], "label", "Fourier");
    if (!label.is_string() || label.get<std::string>() != c.irrep().label)
      throw DomainError("Fourier class " + std::to_string(k) + " must be " + c.irrep().label);
    blocks.push_back(matrix_from_json(field<DomainError>(cj[k], "block", "Fourier"), c.dim(), c.dim()));
  }
  return FourierCoefficients(dual, std::move(blocks));
}

Json to_json(const MatrixSymbol& s) {
  Json classes = Json::array();
  for (std::size_t k = 0; k < s.dual->size(); ++k) {
    const auto& c = s.dual->at(k);
    Json blocks = Json::array();
    for (const auto& row : s.blocks) blocks.push_back(to_json(row[k]));
    classes.push_back(
        Json{{"label", c.irrep().label}, {"dim", c.dim()}, {"rank", c.projection.rank}, {"blocks", std::move(blocks)}});
  }
  Json out;
  out["size"] = s.space()->size();
  out["classes"] = std::move(classes);
  return out;
}

MatrixSymbol symbol_from_json(const Json& j, const DualPtr& dual) {
  const int n = as_int<DomainError>(field<DomainError>(j, "size", "symbol"), "symbol size");
  if (n != dual->space()->size()) throw DomainError("symbol size does not match the coset space");
  const Json& cj = field<DomainError>(j, "classes", "symbol");
  if (!cj.is_array() || cj.size() != dual->size())
    throw DomainError("symbol document must list " + std::to_string(dual->size()) + " classes");
  std::vector<std::vector<CMatrix>> blocks(n, std::vector<CMatrix>(dual->size()));
  for (std::size_t k = 0; k < cj.size(); ++k) {
    const auto& c = dual->at(k);
    const Json& label = field<DomainError>(cj[k], "label", "symbol");
    if (!label.is_string() || label.get<std::string>() != c.irrep().label)
      throw DomainError("symbol class " + std::to_string(k) + " must be " + c.irrep().label);
    const Json& bj = field<DomainError>(cj[k], "blocks", "symbol");
    if (!bj.is_array() || static_cast<int>(bj.size()) != n) throw DomainError("symbol class needs one block per coset");
    for (int x = 0; x < n; ++x) blocks[x][k] = matrix_from_json(bj[x], c.dim(), c.dim());
  }
  return MatrixSymbol(dual, std::move(blocks));
}

Json kernel_to_json(const LinearOperator& t) {
  Json out;
  out["size"] = t.size();
  out["kernel"] = to_json(t.kernel);
  return out;
}

LinearOperator kernel_from_json(const Json& j, const SpacePtr& space) {
  const int n = as_int<DomainError>(field<DomainError>(j, "size", "kernel"), "kernel size");
  if (n != space->size())
    throw DomainError("kernel size " + std::to_string(n) + " does not match " + std::to_string(space->size()) +
                      " cosets");
  return LinearOperator(space, matrix_from_json(field<DomainError>(j, "kernel", "kernel"), n, n));
}

}  // namespace cpsi
