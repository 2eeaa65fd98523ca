#include "cpsi/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <map>
#include <numbers>

namespace cpsi {

namespace {

using Perm = std::vector<int>;

// (a*b)(i) = a(b(i)): apply b first.
Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm transposition(int n, int i, int j) {
  Perm p(n);
  for (int k = 0; k < n; ++k) p[k] = k;
  std::swap(p[i], p[j]);
  return p;
}

bool is_transposition(const Perm& p) {
  int moved = 0;
  for (std::size_t i = 0; i < p.size(); ++i) moved += p[i] != static_cast<int>(i);
  return moved == 2;
}

int parity(const Perm& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<int>> table_from(const std::vector<Perm>& elems) {
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  return table;
}

int find_perm(const std::vector<Perm>& elems, const Perm& p) {
  return static_cast<int>(std::find(elems.begin(), elems.end(), p) - elems.begin());
}

// Standard representation on the sum-zero hyperplane in the Helmert basis
// h_k = (1, ..., 1, -k, 0, ..., 0) / sqrt(k(k+1)), k = 1..n-1. Transpositions
// of the first points act diagonally, so stabilizer chains get diagonal
// H-projections.
CMatrix helmert_standard(const Perm& p) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<double>> basis(n - 1, std::vector<double>(n, 0.0));
  for (int k = 1; k < n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (int i = 0; i < k; ++i) basis[k - 1][i] = s;
    basis[k - 1][k] = -k * s;
  }
  // (P h)_i = h_{p^{-1}(i)} for P e_j = e_{p(j)}.
  CMatrix m(n - 1, n - 1);
  for (int a = 0; a < n - 1; ++a)
    for (int b = 0; b < n - 1; ++b) {
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += basis[a][p[j]] * basis[b][j];
      m(a, b) = v;
    }
  return m;
}

CMatrix scalar_matrix(cplx v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) { return CMatrix(2, 2, {a, b, c, d}); }

std::vector<int> elements_where(int n, const auto& pred) {
  std::vector<int> out;
  for (int g = 0; g < n; ++g)
    if (pred(g)) out.push_back(g);
  return out;
}

void add_standard_subgroups(GroupSpec& spec) {
  const int n = spec.group->order();
  spec.subgroups.insert(spec.subgroups.begin(), {"trivial", Subgroup(spec.group, {spec.group->identity()})});
  std::vector<int> all(n);
  for (int g = 0; g < n; ++g) all[g] = g;
  spec.subgroups.emplace_back("full", Subgroup(spec.group, all));
}

IrrepPtr make_irrep(const FiniteGroup& g, std::string label, const std::vector<int>& gens, const std::vector<CMatrix>& images) {
  return std::make_shared<const Irrep>(expand_from_generators(g, std::move(label), gens, images));
}

GroupSpec cyclic(int n) {
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>("Z" + std::to_string(n), table);
  const int gen = n > 1 ? 1 : 0;
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    char label[16];
    std::snprintf(label, sizeof label, "chi%02d", k);
    spec.irreps.push_back(make_irrep(*spec.group, label, {gen}, {scalar_matrix(std::polar(1.0, angle))}));
  }
  for (int d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    const int step = n / d;
    spec.subgroups.emplace_back("Z" + std::to_string(d), Subgroup(spec.group, elements_where(n, [&](int g) { return g % step == 0; })));
  }
  add_standard_subgroups(spec);
  spec.laplacian_generators = {gen, (n - gen) % n};
  return spec;
}

GroupSpec dihedral(int n) {
  // r^k -> k, r^k s -> n + k
  const int order = 2 * n;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int a = x % n, e = x / n, b = y % n, f = y / n;
      const int k = ((a + (e ? -b : b)) % n + n) % n;
      table[x][y] = ((e + f) % 2) * n + k;
    }
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>("D" + std::to_string(n), table);
  const std::vector<int> gens = {1, n};
  const auto& g = *spec.group;
  spec.irreps.push_back(make_irrep(g, "A1", gens, {scalar_matrix(1.0), scalar_matrix(1.0)}));
  spec.irreps.push_back(make_irrep(g, "A2", gens, {scalar_matrix(1.0), scalar_matrix(-1.0)}));
  if (n % 2 == 0) {
    spec.irreps.push_back(make_irrep(g, "B1", gens, {scalar_matrix(-1.0), scalar_matrix(1.0)}));
    spec.irreps.push_back(make_irrep(g, "B2", gens, {scalar_matrix(-1.0), scalar_matrix(-1.0)}));
  }
  for (int j = 1; 2 * j < n; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    spec.irreps.push_back(make_irrep(g, "E" + std::to_string(j), gens, {mat2(w, 0.0, 0.0, std::conj(w)), mat2(0.0, 1.0, 1.0, 0.0)}));
  }
  spec.subgroups.emplace_back("rot", Subgroup(spec.group, elements_where(order, [&](int x) { return x < n; })));
  if (n % 2 == 0) spec.subgroups.emplace_back("Z2rot", Subgroup(spec.group, {0, n / 2}));
  spec.subgroups.emplace_back("Z2s", Subgroup(spec.group, {0, n}));
  add_standard_subgroups(spec);
  for (int k = 0; k < n; ++k) spec.laplacian_generators.push_back(n + k);
  return spec;
}

GroupSpec symmetric3() {
  const std::vector<Perm> elems = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>("S3", table_from(elems));
  const auto& g = *spec.group;
  const int t01 = 1;
  const int cycle = 4;  // 0 -> 1 -> 2 -> 0
  const std::vector<int> gens = {t01, cycle};
  spec.irreps.push_back(make_irrep(g, "trivial", gens, {scalar_matrix(1.0), scalar_matrix(1.0)}));
  spec.irreps.push_back(make_irrep(g, "sign", gens, {scalar_matrix(-1.0), scalar_matrix(1.0)}));
  spec.irreps.push_back(make_irrep(g, "standard", gens, {helmert_standard(elems[t01]), helmert_standard(elems[cycle])}));
  spec.subgroups.emplace_back("Z2a", Subgroup(spec.group, {0, 1}));
  spec.subgroups.emplace_back("Z2b", Subgroup(spec.group, {0, 2}));
  spec.subgroups.emplace_back("Z2c", Subgroup(spec.group, {0, 3}));
  spec.subgroups.emplace_back("Z3", Subgroup(spec.group, {0, 4, 5}));
  add_standard_subgroups(spec);
  spec.laplacian_generators = {1, 2, 3};
  return spec;
}

GroupSpec symmetric4() {
  std::vector<Perm> elems;
  Perm p = {0, 1, 2, 3};
  do elems.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>("S4", table_from(elems));
  const auto& g = *spec.group;
  const Perm t01 = transposition(4, 0, 1);
  const Perm cyc = {1, 2, 3, 0};
  const std::vector<int> gens = {find_perm(elems, t01), find_perm(elems, cyc)};

  // S4 -> S3 through the action on the three pairings {01|23}, {02|13}, {03|12}.
  auto pairing_perm = [](const Perm& s) {
    auto pairing_of = [](int a, int b) {
      const int other = a == 0 ? b : (b == 0 ? a : -1);
      if (other > 0) return other - 1;
      // a pair not containing 0: its complement contains 0
      const int rest = 6 - a - b;  // the partner of 0
      return rest - 1;
    };
    Perm out(3);
    for (int k = 0; k < 3; ++k) out[k] = pairing_of(s[0], s[k + 1]);
    return out;
  };

  auto images = [&](auto fn) { return std::vector<CMatrix>{fn(t01), fn(cyc)}; };
  spec.irreps.push_back(make_irrep(g, "trivial", gens, images([](const Perm&) { return scalar_matrix(1.0); })));
  spec.irreps.push_back(make_irrep(g, "sign", gens, images([](const Perm& s) { return scalar_matrix(parity(s)); })));
  spec.irreps.push_back(make_irrep(g, "quotient", gens, images([&](const Perm& s) { return helmert_standard(pairing_perm(s)); })));
  spec.irreps.push_back(make_irrep(g, "standard", gens, images([](const Perm& s) { return helmert_standard(s); })));
  spec.irreps.push_back(make_irrep(g, "standard_sign", gens, images([](const Perm& s) {
                                     return helmert_standard(s) * cplx(parity(s));
                                   })));

  const int n = g.order();
  spec.subgroups.emplace_back("Z2", Subgroup(spec.group, {0, find_perm(elems, t01)}));
  spec.subgroups.emplace_back("V4", Subgroup(spec.group, elements_where(n, [&](int x) {
                                               const Perm& s = elems[x];
                                               bool fixed_point_free_involution = true;
                                               for (int i = 0; i < 4; ++i) fixed_point_free_involution &= s[s[i]] == i && s[i] != i;
                                               return x == 0 || fixed_point_free_involution;
                                             })));
  spec.subgroups.emplace_back("S3", Subgroup(spec.group, elements_where(n, [&](int x) { return elems[x][3] == 3; })));
  spec.subgroups.emplace_back("A4", Subgroup(spec.group, elements_where(n, [&](int x) { return parity(elems[x]) == 1; })));
  add_standard_subgroups(spec);
  spec.laplacian_generators = elements_where(n, [&](int x) { return is_transposition(elems[x]); });
  return spec;
}

GroupSpec quaternion8() {
  const cplx i{0.0, 1.0};
  const CMatrix one = CMatrix::identity(2);
  const CMatrix qi = mat2(i, 0.0, 0.0, -i);
  const CMatrix qj = mat2(0.0, 1.0, -1.0, 0.0);
  const CMatrix qk = qi * qj;
  // 1, -1, i, -i, j, -j, k, -k
  const std::vector<CMatrix> elems = {one, -1.0 * one, qi, -1.0 * qi, qj, -1.0 * qj, qk, -1.0 * qk};
  auto lookup = [&](const CMatrix& m) {
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (max_abs_diff(elems[k], m) < 1e-12) return static_cast<int>(k);
    throw GroupError("Q8: product outside the group");
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a][b] = lookup(elems[a] * elems[b]);
  GroupSpec spec;
  spec.group = std::make_shared<const FiniteGroup>("Q8", table);
  const auto& g = *spec.group;
  const std::vector<int> gens = {2, 4};
  spec.irreps.push_back(make_irrep(g, "trivial", gens, {scalar_matrix(1.0), scalar_matrix(1.0)}));
  spec.irreps.push_back(make_irrep(g, "chi_i", gens, {scalar_matrix(1.0), scalar_matrix(-1.0)}));
  spec.irreps.push_back(make_irrep(g, "chi_j", gens, {scalar_matrix(-1.0), scalar_matrix(1.0)}));
  spec.irreps.push_back(make_irrep(g, "chi_k", gens, {scalar_matrix(-1.0), scalar_matrix(-1.0)}));
  spec.irreps.push_back(make_irrep(g, "quaternion", gens, {qi, qj}));
  spec.subgroups.emplace_back("Z2", Subgroup(spec.group, {0, 1}));
  spec.subgroups.emplace_back("Z4", Subgroup(spec.group, {0, 1, 2, 3}));
  spec.subgroups.emplace_back("Z4j", Subgroup(spec.group, {0, 1, 4, 5}));
  spec.subgroups.emplace_back("Z4k", Subgroup(spec.group, {0, 1, 6, 7}));
  add_standard_subgroups(spec);
  spec.laplacian_generators = {2, 3, 4, 5, 6, 7};
  return spec;
}

}  // namespace

const Subgroup& GroupSpec::subgroup(const std::string& name) const {
  for (const auto& [n, h] : subgroups)
    if (n == name) return h;
  throw DomainError("unknown subgroup '" + name + "' of " + group->name());
}

std::vector<int> GroupSpec::generators_or_default() const {
  if (!laplacian_generators.empty()) return laplacian_generators;
  std::vector<int> all;
  for (int g = 0; g < group->order(); ++g)
    if (g != group->identity()) all.push_back(g);
  return all;
}

std::vector<std::string> builtin_group_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 24; ++n) names.push_back("Z" + std::to_string(n));
  for (int n = 3; n <= 12; ++n) names.push_back("D" + std::to_string(n));
  names.insert(names.end(), {"S3", "S4", "Q8"});
  return names;
}

GroupSpec builtin_group(const std::string& name) {
  if (name == "S3") return symmetric3();
  if (name == "S4") return symmetric4();
  if (name == "Q8") return quaternion8();
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'D') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }) && name.size() <= 3) {
    const int n = std::stoi(name.substr(1));
    if (name[0] == 'Z' && n >= 1 && n <= 24) return cyclic(n);
    if (name[0] == 'D' && n >= 3 && n <= 12) return dihedral(n);
  }
  throw DomainError("unknown group '" + name + "'");
}

}  // namespace cpsi
