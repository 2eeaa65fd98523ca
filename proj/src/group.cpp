#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "cpsi/coset_space.hpp"
#include "cpsi/dual.hpp"
#include "cpsi/group.hpp"
#include "cpsi/linalg/decomp.hpp"
#include "cpsi/random.hpp"

namespace cpsi {

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> cayley) : name_(std::move(name)) {
  const auto n = cayley.size();
  if (n == 0) throw GroupError("malformed table: empty Cayley table");
  for (const auto& row : cayley)
    if (row.size() != n) throw GroupError("malformed table: Cayley table is not square");
  order_ = static_cast<int>(n);
  table_.reserve(n * n);
  for (const auto& row : cayley)
    for (int v : row) {
      if (v < 0 || v >= order_) throw GroupError("malformed table: entry out of range");
      table_.push_back(v);
    }

  std::vector<std::uint8_t> seen(n);
  for (int a = 0; a < order_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order_; ++b)
      if (seen[multiply(a, b)]++) throw GroupError("not a Latin square: repeated entry in row " + std::to_string(a));
  }
  for (int b = 0; b < order_; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < order_; ++a)
      if (seen[multiply(a, b)]++) throw GroupError("not a Latin square: repeated entry in column " + std::to_string(b));
  }

  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < order_ && ok; ++g) ok = multiply(e, g) == g && multiply(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw GroupError("missing identity: no two-sided identity element");

  inverse_.assign(n, -1);
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h)
      if (multiply(g, h) == identity_ && multiply(h, g) == identity_) inverse_[g] = h;
  for (int g = 0; g < order_; ++g)
    if (inverse_[g] < 0) throw GroupError("missing inverse: element " + std::to_string(g) + " has no two-sided inverse");

  auto check = [&](int a, int b, int c) {
    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
      std::ostringstream os;
      os << "not associative: (" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
      throw GroupError(os.str());
    }
  };
  if (order_ <= 64) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c) check(a, b, c);
  } else {
    SplitMix64 rng(0x5eedULL + static_cast<std::uint64_t>(order_));
    for (int k = 0; k < 20000; ++k) {
      check(static_cast<int>(rng.next() % n), static_cast<int>(rng.next() % n), static_cast<int>(rng.next() % n));
    }
  }
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (multiply(a, b) != multiply(b, a)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::cayley() const {
  std::vector<std::vector<int>> out(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) out[a][b] = multiply(a, b);
  return out;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements) : parent_(std::move(parent)), elements_(std::move(elements)) {
  if (!parent_) throw GroupError("subgroup: missing parent group");
  const int n = parent_->order();
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (elements_.empty()) throw GroupError("subgroup: empty element list");
  member_.assign(n, 0);
  for (int g : elements_) {
    if (g < 0 || g >= n) throw GroupError("subgroup: element index out of range");
    member_[g] = 1;
  }
  if (!contains(parent_->identity())) throw GroupError("subgroup: does not contain the identity");
  for (int a : elements_) {
    if (!contains(parent_->inverse(a)))
      throw GroupError("subgroup not closed: inverse of " + std::to_string(a) + " missing");
    for (int b : elements_)
      if (!contains(parent_->multiply(a, b)))
        throw GroupError("subgroup not closed: " + std::to_string(a) + "*" + std::to_string(b) + " missing");
  }
}

bool Subgroup::is_normal() const {
  for (int g = 0; g < parent_->order(); ++g)
    for (int h : elements_)
      if (!contains(parent_->conjugate(h, g))) return false;
  return true;
}

bool Subgroup::operator==(const Subgroup& other) const {
  return parent_ == other.parent_ && elements_ == other.elements_;
}

// ---------------------------------------------------------------- Irrep

Irrep::Irrep(std::string label_, int dim_, std::vector<CMatrix> matrices_)
    : label(std::move(label_)), dim(dim_), matrices(std::move(matrices_)) {
  character.reserve(matrices.size());
  for (const auto& m : matrices) character.push_back(m.trace());
}

IrrepReport verify_irrep(const FiniteGroup& g, const Irrep& rep, double tol) {
  IrrepReport report;
  const auto n = static_cast<std::size_t>(g.order());
  const auto d = static_cast<std::size_t>(rep.dim);
  if (rep.dim <= 0 || rep.matrices.size() != n) {
    report.message = "expected one matrix per group element";
    return report;
  }
  for (const auto& m : rep.matrices) {
    if (m.rows() != d || m.cols() != d) {
      report.message = "dimension mismatch: matrix shape differs from declared dim";
      return report;
    }
  }
  const CMatrix eye = CMatrix::identity(d);
  for (std::size_t a = 0; a < n; ++a) {
    report.unitarity_residual =
        std::max(report.unitarity_residual, max_abs_diff(rep.matrices[a] * rep.matrices[a].adjoint(), eye));
    for (std::size_t b = 0; b < n; ++b) {
      const CMatrix prod = rep.matrices[a] * rep.matrices[b];
      report.homomorphism_residual = std::max(
          report.homomorphism_residual, max_abs_diff(prod, rep.matrices[g.multiply(static_cast<int>(a), static_cast<int>(b))]));
    }
  }
  double sum = 0.0;
  for (const auto& m : rep.matrices) sum += std::norm(m.trace());
  report.irreducibility_sum = sum / static_cast<double>(n);

  std::ostringstream os;
  if (report.homomorphism_residual > tol) os << "not a homomorphism (residual " << report.homomorphism_residual << "); ";
  if (report.unitarity_residual > tol) os << "not unitary (residual " << report.unitarity_residual << "); ";
  if (std::abs(report.irreducibility_sum - 1.0) > tol)
    os << "not irreducible (character norm " << report.irreducibility_sum << "); ";
  report.message = os.str();
  report.passed = report.message.empty();
  if (report.passed) report.message = "ok";
  return report;
}

Irrep expand_from_generators(const FiniteGroup& g, std::string label, const std::vector<int>& generators,
                             const std::vector<CMatrix>& images) {
  if (generators.size() != images.size() || images.empty())
    throw GroupError("expand_from_generators: generator/image count mismatch");
  const std::size_t d = images.front().rows();
  std::vector<CMatrix> mats(g.order());
  std::vector<std::uint8_t> done(g.order(), 0);
  mats[g.identity()] = CMatrix::identity(d);
  done[g.identity()] = 1;
  std::deque<int> queue{g.identity()};
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < generators.size(); ++k) {
      const int y = g.multiply(x, generators[k]);
      if (done[y]) continue;
      mats[y] = mats[x] * images[k];
      done[y] = 1;
      queue.push_back(y);
    }
  }
  if (std::find(done.begin(), done.end(), 0) != done.end())
    throw GroupError("expand_from_generators: generators do not generate " + g.name());
  return Irrep(std::move(label), static_cast<int>(d), std::move(mats));
}

// ---------------------------------------------------------------- CosetSpace

CosetSpace::CosetSpace(Subgroup subgroup) : subgroup_(std::move(subgroup)) {
  const FiniteGroup& g = subgroup_.parent();
  coset_of_.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of_[x] >= 0) continue;
    const int index = static_cast<int>(representatives_.size());
    representatives_.push_back(x);
    for (int h : subgroup_.elements()) coset_of_[g.multiply(x, h)] = index;
  }
}

int CosetSpace::translate(int g, int coset) const { return coset_of_[group().multiply(g, representatives_[coset])]; }

bool CosetSpace::same_as(const CosetSpace& other) const { return this == &other || subgroup_ == other.subgroup_; }

SpacePtr coset_space(const Subgroup& h) { return std::make_shared<const CosetSpace>(h); }

void require_same_space(const CosetSpace& a, const CosetSpace& b, const char* where) {
  if (!a.same_as(b)) throw DomainError(std::string(where) + ": objects live on different coset spaces");
}

CosetFunction::CosetFunction(SpacePtr space_, std::vector<cplx> values_) : space(std::move(space_)), values(std::move(values_)) {
  if (!space) throw DomainError("CosetFunction: missing space");
  if (static_cast<int>(values.size()) != space->size())
    throw DomainError("CosetFunction: expected " + std::to_string(space->size()) + " values, got " +
                      std::to_string(values.size()));
}

CosetFunction CosetFunction::constant(SpacePtr space, cplx c) {
  const int n = space->size();
  return CosetFunction(std::move(space), std::vector<cplx>(n, c));
}

CosetFunction CosetFunction::indicator(SpacePtr space, int coset) {
  std::vector<cplx> v(space->size(), 0.0);
  v.at(coset) = 1.0;
  return CosetFunction(std::move(space), std::move(v));
}

CosetFunction CosetFunction::conj() const {
  CosetFunction out = *this;
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

CosetFunction average_over_H(const SpacePtr& space, const std::vector<cplx>& f) {
  const FiniteGroup& g = space->group();
  if (static_cast<int>(f.size()) != g.order()) throw DomainError("average_over_H: expected one value per group element");
  const Subgroup& h = space->subgroup();
  std::vector<cplx> out(space->size());
  for (int c = 0; c < space->size(); ++c) {
    cplx sum = 0.0;
    for (int e : h.elements()) sum += f[g.multiply(space->representative(c), e)];
    out[c] = sum / static_cast<double>(h.order());
  }
  return CosetFunction(space, std::move(out));
}

// ---------------------------------------------------------------- Dual object

HProjection h_projection(const Subgroup& h, IrrepPtr irrep) {
  const auto d = static_cast<std::size_t>(irrep->dim);
  CMatrix t(d, d);
  for (int e : h.elements()) t += irrep->matrices.at(e);
  t *= 1.0 / static_cast<double>(h.order());
  const auto eig = hermitian_eigen(t);
  int rank = 0;
  for (double v : eig.values)
    if (v > kDualTolerance) ++rank;
  return HProjection{std::move(irrep), std::move(t), rank};
}

DualObject::DualObject(SpacePtr space, std::vector<HProjection> classes) : space_(std::move(space)) {
  std::stable_sort(classes.begin(), classes.end(), [](const HProjection& a, const HProjection& b) {
    if (a.irrep->dim != b.irrep->dim) return a.irrep->dim < b.irrep->dim;
    return a.irrep->label < b.irrep->label;
  });
  classes_.reserve(classes.size());
  for (auto& p : classes) {
    Class c;
    c.rep_matrix.reserve(space_->size());
    c.gamma.reserve(space_->size());
    for (int x = 0; x < space_->size(); ++x) {
      const CMatrix& pi = p.irrep->matrices.at(space_->representative(x));
      c.rep_matrix.push_back(pi);
      c.gamma.push_back(pi * p.matrix);
    }
    c.projection = std::move(p);
    classes_.push_back(std::move(c));
  }
}

int DualObject::trivial_index() const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const Irrep& r = classes_[i].irrep();
    if (r.dim != 1) continue;
    bool trivial = true;
    for (const auto& ch : r.character) trivial = trivial && std::abs(ch - 1.0) < 1e-12;
    if (trivial) return static_cast<int>(i);
  }
  return -1;
}

int DualObject::dimension_count() const {
  int total = 0;
  for (const auto& c : classes_) total += c.dim() * c.projection.rank;
  return total;
}

DualObject DualObject::adapted() const {
  std::vector<HProjection> rotated;
  rotated.reserve(classes_.size());
  for (const auto& c : classes_) {
    const auto eig = hermitian_eigen(c.projector());
    const CMatrix& u = eig.vectors;
    const CMatrix uh = u.adjoint();
    std::vector<CMatrix> mats;
    mats.reserve(c.irrep().matrices.size());
    for (const auto& m : c.irrep().matrices) mats.push_back(uh * m * u);
    auto irrep = std::make_shared<const Irrep>(c.irrep().label, c.dim(), std::move(mats));
    rotated.push_back(h_projection(space_->subgroup(), std::move(irrep)));
  }
  return DualObject(space_, std::move(rotated));
}

DualPtr dual_object(const SpacePtr& space, const std::vector<IrrepPtr>& catalog) {
  const int order = space->group().order();
  int sum = 0;
  for (const auto& r : catalog) sum += r->dim * r->dim;
  if (sum != order)
    throw DomainError("incomplete catalog: sum of d^2 is " + std::to_string(sum) + ", |G| = " + std::to_string(order) +
                      " (deficit " + std::to_string(order - sum) + ")");
  std::vector<HProjection> classes;
  for (const auto& r : catalog) {
    auto p = h_projection(space->subgroup(), r);
    if (p.matrix.frobenius_norm() > kDualTolerance) classes.push_back(std::move(p));
  }
  return std::make_shared<const DualObject>(space, std::move(classes));
}

CMatrix gamma(const HProjection& t, const CosetSpace& space, int coset) {
  return t.irrep->matrices.at(space.representative(coset)) * t.matrix;
}

}  // namespace cpsi
