#include "cpsi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

#include "cpsi/fourier.hpp"
#include "cpsi/heat.hpp"
#include "cpsi/linalg/decomp.hpp"
#include "cpsi/nuclear.hpp"
#include "cpsi/quantize.hpp"
#include "cpsi/schatten.hpp"
#include "cpsi/serialize.hpp"

namespace cpsi {

int VerificationReport::passed_count() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; }));
}

const CheckResult* VerificationReport::worst() const {
  const CheckResult* worst = nullptr;
  double ratio = -1.0;
  for (const auto& c : checks) {
    if (c.passed) continue;
    const double r = std::isnan(c.residual) ? std::numeric_limits<double>::infinity()
                                            : c.residual / std::max(c.tolerance, std::numeric_limits<double>::min());
    if (r > ratio) {
      ratio = r;
      worst = &c;
    }
  }
  return worst;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "core", "fourier", "quantize", "schatten", "nuclear", "heat"};
  return names;
}

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double relative(const CMatrix& a, const CMatrix& b) { return max_abs_diff(a, b) / std::max(b.max_abs(), kTiny); }

double relative(const MatrixSymbol& a, const MatrixSymbol& b) { return max_abs_diff(a, b) / std::max(max_abs(b), kTiny); }

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

double max_abs(const std::vector<cplx>& a) {
  double r = 0.0;
  for (const auto& z : a) r = std::max(r, std::abs(z));
  return r;
}

// L^2(mu) inner product sum mu a conj(b).
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b, double mu) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s * mu;
}

std::vector<cplx> coefficient(const DualObject::Class& c, std::size_t i, std::size_t j) {
  std::vector<cplx> v(c.gamma.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = c.gamma[x](i, j);
  return v;
}

CMatrix random_matrix(std::size_t n, SplitMix64& rng) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

class Runner {
 public:
  Runner(const GroupSpec& spec, const std::string& subgroup, const VerifyOptions& options)
      : spec_(spec), options_(options) {
    space_ = coset_space(spec.subgroup(subgroup));
    dual_ = dual_object(space_, spec.irreps);
    report_.suite = options.suite;
    report_.group = spec.group->name();
    report_.subgroup = subgroup;
    report_.seed = options.seed;
    pair_ = report_.group + "/" + subgroup;
  }

  VerificationReport run() {
    const auto& s = options_.suite;
    if (s == "all" || s == "core") core();
    if (s == "all" || s == "fourier") fourier();
    if (s == "all" || s == "quantize") quantize();
    if (s == "all" || s == "schatten") schatten();
    if (s == "all" || s == "nuclear") nuclear();
    if (s == "all" || s == "heat") heat();
    return std::move(report_);
  }

 private:
  void check(const std::string& id, double tolerance, const std::function<double(SplitMix64&)>& fn) {
    SplitMix64 rng(options_.seed ^ fnv1a(id));
    CheckResult r;
    r.id = id;
    r.pair = pair_;
    r.tolerance = options_.tolerance.value_or(tolerance);
    const auto start = std::chrono::steady_clock::now();
    try {
      r.residual = fn(rng);
    } catch (const std::exception&) {
      r.residual = std::numeric_limits<double>::infinity();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.residual <= r.tolerance;
    report_.checks.push_back(std::move(r));
  }

  int n() const { return space_->size(); }
  double mu() const { return space_->weight(); }

  void core() {
    const auto& g = *spec_.group;
    check("core.catalog_complete", 0.0, [&](SplitMix64&) {
      long sum = 0;
      for (const auto& r : spec_.irreps) sum += static_cast<long>(r->dim) * r->dim;
      return static_cast<double>(std::labs(sum - g.order()));
    });
    check("core.irreps", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (const auto& rep : spec_.irreps) {
        const auto v = verify_irrep(g, *rep);
        r = std::max({r, v.homomorphism_residual, v.unitarity_residual, std::abs(v.irreducibility_sum - 1.0)});
      }
      return r;
    });
    check("core.projection", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      for (const auto& rep : spec_.irreps) {
        const auto p = h_projection(space_->subgroup(), rep);
        const CMatrix& t = p.matrix;
        r = std::max({r, max_abs_diff(t * t, t), max_abs_diff(t.adjoint(), t)});
        for (int h : space_->subgroup().elements())
          r = std::max({r, max_abs_diff(rep->matrices[h] * t, t), max_abs_diff(t * rep->matrices[h], t)});
        const auto e = hermitian_eigen(t);
        r = std::max(r, std::max(0.0, e.values.front() - 1.0));
      }
      return r;
    });
    check("core.dimension_identity", 0.0,
          [&](SplitMix64&) { return static_cast<double>(std::abs(dual_->dimension_count() - n())); });
    check("core.weil", 1e-12, [&](SplitMix64& rng) {
      std::vector<cplx> f(g.order());
      for (auto& z : f) z = rng.complex_normal();
      const auto t = average_over_H(space_, f);
      cplx lhs = 0.0, rhs = 0.0;
      for (const auto& v : t.values) lhs += v * mu();
      for (const auto& v : f) rhs += v / static_cast<double>(g.order());
      return std::abs(lhs - rhs);
    });
    check("core.gamma_representative", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      for (const auto& c : dual_->classes()) {
        r = std::max(r, max_abs_diff(c.gamma[space_->coset_of(g.identity())], c.projector()));
        for (int x = 0; x < g.order(); ++x)
          r = std::max(r, max_abs_diff(c.irrep().matrices[x] * c.projector(), c.gamma[space_->coset_of(x)]));
      }
      return r;
    });
    check("core.orthogonality", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (std::size_t a = 0; a < dual_->size(); ++a)
        for (std::size_t b = 0; b < dual_->size(); ++b) {
          const auto& ca = dual_->at(a);
          const auto& cb = dual_->at(b);
          for (int i = 0; i < ca.dim(); ++i)
            for (int j = 0; j < ca.dim(); ++j) {
              const auto fa = coefficient(ca, i, j);
              for (int k = 0; k < cb.dim(); ++k)
                for (int l = 0; l < cb.dim(); ++l) {
                  const cplx ip = inner(fa, coefficient(cb, k, l), mu());
                  const cplx expected = (a == b && i == k) ? ca.projector()(l, j) / static_cast<double>(ca.dim()) : 0.0;
                  r = std::max(r, std::abs(ip - expected));
                }
            }
        }
      return r;
    });
    check("core.orthonormal_adapted", 1e-10, [&](SplitMix64&) {
      const DualObject adapted = dual_->adapted();
      std::vector<std::vector<cplx>> fs;
      for (const auto& c : adapted.classes()) {
        const double s = std::sqrt(static_cast<double>(c.dim()));
        for (int i = 0; i < c.dim(); ++i)
          for (int j = 0; j < c.projection.rank; ++j) {
            auto f = coefficient(c, i, j);
            for (auto& z : f) z *= s;
            fs.push_back(std::move(f));
          }
      }
      double r = std::abs(static_cast<double>(fs.size()) - n());
      for (std::size_t a = 0; a < fs.size(); ++a)
        for (std::size_t b = 0; b < fs.size(); ++b)
          r = std::max(r, std::abs(inner(fs[a], fs[b], mu()) - (a == b ? 1.0 : 0.0)));
      return r;
    });
    check("core.lq_bounds", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      for (const auto& c : dual_->classes()) {
        const double d = c.dim();
        for (int i = 0; i < c.dim(); ++i)
          for (int j = 0; j < c.dim(); ++j) {
            const auto f = coefficient(c, i, j);
            for (double q : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
              const double bound = q >= 2.0 ? std::pow(d, -1.0 / q) : std::pow(d, -0.5);
              r = std::max(r, lq_norm(f, q) - bound);
            }
          }
      }
      return std::max(r, 0.0);
    });
  }

  void fourier() {
    check("fourier.plancherel", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.functions; ++k) {
        const auto f = random_function(space_, rng);
        const double l2 = lq_norm(f, 2.0);
        const double p = plancherel_norm(forward_transform(f, dual_));
        r = std::max(r, std::abs(l2 * l2 - p * p) / (l2 * l2));
      }
      return r;
    });
    check("fourier.inversion", 1e-11, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.functions; ++k) {
        const auto f = random_function(space_, rng);
        r = std::max(r, max_diff(inverse_transform(forward_transform(f, dual_)).values, f.values));
      }
      return r;
    });
    check("fourier.left_absorption", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.functions; ++k) {
        const auto f = forward_transform(random_function(space_, rng), dual_);
        for (std::size_t c = 0; c < dual_->size(); ++c)
          r = std::max(r, max_abs_diff(dual_->at(c).projector() * f.blocks[c], f.blocks[c]));
      }
      return r;
    });
    check("fourier.constant", 1e-13, [&](SplitMix64&) {
      const auto f = forward_transform(CosetFunction::constant(space_, 1.0), dual_);
      double r = 0.0;
      for (std::size_t c = 0; c < dual_->size(); ++c) {
        const bool trivial = static_cast<int>(c) == dual_->trivial_index();
        r = std::max(r, trivial ? std::abs(f.blocks[c](0, 0) - 1.0) : f.blocks[c].max_abs());
      }
      return r;
    });
    check("fourier.indicator", 1e-12, [&](SplitMix64&) {
      const auto f = CosetFunction::indicator(space_, 0);
      const double expected = 1.0 / std::sqrt(static_cast<double>(n()));
      return std::max(std::abs(lq_norm(f, 2.0) - expected),
                      std::abs(plancherel_norm(forward_transform(f, dual_)) - expected));
    });
    check("fourier.forward_of_inverse", 1e-11, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.functions; ++k) {
        auto f = FourierCoefficients::zero(dual_);
        for (auto& b : f.blocks) b = random_matrix(b.rows(), rng);
        const auto back = forward_transform(inverse_transform(f), dual_);
        for (std::size_t c = 0; c < dual_->size(); ++c)
          r = std::max(r, max_abs_diff(back.blocks[c], dual_->at(c).projector() * f.blocks[c]));
      }
      return r;
    });
    check("fourier.naive_oracle", 1e-13, [&](SplitMix64& rng) {
      double r = 0.0;
      const auto& g = *spec_.group;
      for (int k = 0; k < std::min(options_.functions, 10); ++k) {
        const auto f = random_function(space_, rng);
        const auto fast = forward_transform(f, dual_);
        for (std::size_t c = 0; c < dual_->size(); ++c) {
          const auto& cls = dual_->at(c);
          const int d = cls.dim();
          const CMatrix& t = cls.projector();
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              cplx sum = 0.0;
              for (int x = 0; x < n(); ++x) {
                const CMatrix& p = cls.irrep().matrices[space_->representative(x)];
                cplx gba = 0.0;  // (pi(x) T)_{ba}
                for (int m = 0; m < d; ++m) gba += p(b, m) * t(m, a);
                sum += f.values[x] * std::conj(gba) / static_cast<double>(n());
              }
              r = std::max(r, std::abs(sum - fast.blocks[c](a, b)));
            }
        }
        (void)g;
      }
      return r;
    });
    classical_dft();
  }

  // For H = <N> in Z_n the quotient is Z_N and the transform must be the
  // N-point DFT, class chiK corresponding to frequency K N / n.
  void classical_dft() {
    static const std::regex cyclic("Z([0-9]+)");
    std::smatch m;
    const std::string name = spec_.group->name();
    if (!std::regex_match(name, m, cyclic)) return;
    const int order = std::stoi(m[1]);
    if (order != spec_.group->order()) return;
    for (int h : space_->subgroup().elements())
      if (h % n() != 0) return;
    for (const auto& c : dual_->classes())
      if (c.irrep().label.rfind("chi", 0) != 0) return;
    check("fourier.classical_dft", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.functions; ++k) {
        const auto f = random_function(space_, rng);
        const auto fast = forward_transform(f, dual_);
        for (std::size_t c = 0; c < dual_->size(); ++c) {
          const int label = std::stoi(dual_->at(c).irrep().label.substr(3));
          const int freq = label * n() / order;
          cplx dft = 0.0;
          for (int j = 0; j < n(); ++j)
            dft += f.values[j] * std::polar(1.0, -2.0 * std::numbers::pi * freq * space_->representative(j) / n());
          dft /= static_cast<double>(n());
          r = std::max(r, std::abs(dft - fast.blocks[c](0, 0)));
        }
      }
      return r;
    });
  }

  void quantize() {
    check("quantize.roundtrip_operator", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        r = std::max(r, relative(op_from_symbol(symbol_from_operator(t, dual_)).kernel, t.kernel));
      }
      return r;
    });
    check("quantize.roundtrip_symbol", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto s = random_symbol(dual_, rng);
        r = std::max(r, relative(symbol_from_operator(op_from_symbol(s), dual_), s));
      }
      return r;
    });
    check("quantize.identity", 1e-12, [&](SplitMix64&) {
      const auto id = MatrixSymbol::identity(dual_);
      return std::max(max_abs_diff(op_from_symbol(id).kernel, LinearOperator::identity(space_).kernel),
                      max_abs_diff(symbol_from_operator(LinearOperator::identity(space_), dual_), id));
    });
    check("quantize.zero", 0.0, [&](SplitMix64&) { return op_from_symbol(MatrixSymbol::zero(dual_)).kernel.max_abs(); });
    check("quantize.trace_sum", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto s = random_symbol(dual_, rng);
        const auto f = random_function(space_, rng);
        const auto direct = apply_symbol(s, f);
        r = std::max(r, max_diff(apply(op_from_symbol(s), f).values, direct.values) / std::max(max_abs(direct.values), kTiny));
      }
      return r;
    });
    check("quantize.literal_formula", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        auto s = random_symbol(dual_, rng);
        for (auto& row : s.blocks)
          for (std::size_t c = 0; c < row.size(); ++c) row[c] = dual_->at(c).projector() * row[c];
        const auto a = op_from_symbol(s);
        r = std::max(r, relative(op_from_symbol_literal(s).kernel, a.kernel));
      }
      return r;
    });
    check("quantize.right_absorption", 1e-11, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k)
        r = std::max(r, symbol_from_operator(random_operator(space_, rng), dual_).right_absorption_residual());
      return r;
    });
    check("quantize.left_fixed_point", 1e-11, [&](SplitMix64& rng) {
      // Holds for every operator when H is normal, and for G-equivariant
      // operators (here: the identity) in general.
      double r = symbol_from_operator(LinearOperator::identity(space_), dual_).left_absorption_residual();
      if (space_->subgroup().is_normal())
        for (int k = 0; k < options_.operators; ++k)
          r = std::max(r, symbol_from_operator(random_operator(space_, rng), dual_).left_absorption_residual());
      return r;
    });
    check("quantize.linearity", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto s = random_operator(space_, rng);
        const auto t = random_operator(space_, rng);
        const cplx a = rng.complex_normal(), b = rng.complex_normal();
        const LinearOperator combo(space_, s.kernel * a + t.kernel * b);
        auto expect = symbol_from_operator(s, dual_).scaled(a);
        const auto st = symbol_from_operator(t, dual_).scaled(b);
        for (std::size_t x = 0; x < expect.blocks.size(); ++x)
          for (std::size_t c = 0; c < dual_->size(); ++c) expect.blocks[x][c] += st.blocks[x][c];
        r = std::max(r, relative(symbol_from_operator(combo, dual_), expect));
      }
      return r;
    });
  }

  void schatten() {
    check("schatten.hilbert_schmidt", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        const double s2 = schatten_norm(singular_values(t), 2.0);
        r = std::max(r, std::abs(s2 - hs_norm_via_symbol(symbol_from_operator(t, dual_))) / s2);
      }
      return r;
    });
    check("schatten.kernel_l2", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        const double s2 = schatten_norm(singular_values(t), 2.0);
        const double f = t.kernel.frobenius_norm() * mu();
        r = std::max(r, std::abs(s2 * s2 - f * f) / (f * f));
      }
      return r;
    });
    check("schatten.identity", 1e-12, [&](SplitMix64&) {
      const auto s = singular_values(LinearOperator::identity(space_));
      double r = std::abs(schatten_norm(s, 2.0) - std::sqrt(static_cast<double>(n())));
      for (double v : s.values) r = std::max(r, std::abs(v - 1.0));
      return std::max(r, std::abs(hs_norm_via_symbol(MatrixSymbol::identity(dual_)) - std::sqrt(static_cast<double>(n()))));
    });
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      char id[64];
      std::snprintf(id, sizeof id, "schatten.criterion_r%g", r);
      check(id, 1e-9, [&, r](SplitMix64& rng) {
        double worst = 0.0;
        for (int k = 0; k < options_.operators; ++k)
          worst = std::max(worst, schatten_criterion_check(random_operator(space_, rng), dual_, r).residual);
        return worst;
      });
    }
    check("schatten.modulus_power", 1e-9, [&](SplitMix64& rng) {
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto t = random_operator(space_, rng);
        const auto sv = singular_values(t);
        for (double r : {0.5, 1.0, 3.0})
          for (double q : {1.0, 2.0}) {
            const double lhs = std::pow(schatten_norm(sv, r), r);
            const double rhs = std::pow(schatten_norm(singular_values(fractional_modulus(t, r / q)), q), q);
            worst = std::max(worst, std::abs(lhs - rhs) / lhs);
          }
      }
      return worst;
    });
    check("schatten.modulus_spectrum", 1e-11, [&](SplitMix64& rng) {
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto t = random_operator(space_, rng);
        const auto sv = singular_values(t);
        for (double s : {0.5, 1.5}) {
          const auto m = singular_values(fractional_modulus(t, s));
          for (std::size_t i = 0; i < sv.values.size(); ++i)
            worst = std::max(worst, std::abs(m.values[i] - std::pow(sv.values[i], s)) / std::pow(sv.values[0], s));
        }
      }
      return worst;
    });
    check("schatten.modulus_square", 1e-11, [&](SplitMix64& rng) {
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto t = random_operator(space_, rng);
        const auto tt = compose(adjoint_operator(t), t);
        worst = std::max(worst, relative(fractional_modulus(t, 2.0).kernel, tt.kernel));
      }
      return worst;
    });
    check("schatten.unitary_invariance", 1e-11, [&](SplitMix64& rng) {
      const auto& g = *spec_.group;
      double worst = 0.0;
      const auto t = random_operator(space_, rng);
      const auto sv = singular_values(t);
      for (int e = 0; e < g.order(); ++e) {
        // (U_e f)(x) = f(e^{-1} x), kernel N * delta(w, e^{-1} x)
        CMatrix u(n(), n());
        for (int x = 0; x < n(); ++x) u(x, space_->translate(g.inverse(e), x)) = static_cast<double>(n());
        const LinearOperator ue(space_, u);
        const auto moved = singular_values(compose(ue, t));
        const auto moved2 = singular_values(compose(t, ue));
        for (std::size_t i = 0; i < sv.values.size(); ++i)
          worst = std::max({worst, std::abs(moved.values[i] - sv.values[i]) / sv.values[0],
                            std::abs(moved2.values[i] - sv.values[i]) / sv.values[0]});
      }
      return worst;
    });
    check("schatten.monotone", 1e-12, [&](SplitMix64& rng) {
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto sv = singular_values(random_operator(space_, rng));
        double prev = std::numeric_limits<double>::infinity();
        for (double r : {0.5, 1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
          const double v = schatten_norm(sv, r);
          worst = std::max(worst, (v - prev) / v);
          prev = v;
        }
      }
      return std::max(worst, 0.0);
    });
  }

  void nuclear() {
    check("nuclear.trace_coherence", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto rep = nuclearity_report(random_operator(space_, rng), dual_, 1.0, 2.0, 2.0);
        r = std::max({r, rep.residual_kernel_symbol, rep.residual_kernel_eigen, rep.residual_symbol_eigen});
      }
      return r;
    });
    check("nuclear.trace_identity", 1e-12, [&](SplitMix64&) {
      const auto id = LinearOperator::identity(space_);
      const double nn = n();
      return std::max({std::abs(kernel_diagonal_trace(id) - nn), std::abs(nuclear_trace_via_symbol(MatrixSymbol::identity(dual_)) - nn),
                       std::abs(eigenvalue_trace(id) - nn)});
    });
    check("nuclear.factorization", 1e-11, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        r = std::max(r, relative(kernel_factorization(t).reconstruct().kernel, t.kernel));
      }
      return r;
    });
    check("nuclear.symbol_from_decomposition", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        const auto direct = symbol_from_operator(t, dual_);
        r = std::max(r, relative(symbol_from_decomposition(kernel_factorization(t), dual_), direct));
      }
      return r;
    });
    check("nuclear.kernel_bilinear", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        // An arbitrary (non-SVD) decomposition with a few random terms.
        NuclearDecomposition dec{space_, {}, 1.0, 2.0, 2.0};
        for (int term = 0; term < 3; ++term) dec.terms.push_back({random_function(space_, rng), random_function(space_, rng)});
        const auto k1 = dec.reconstruct();
        r = std::max({r, relative(op_from_symbol(symbol_from_decomposition(dec, dual_)).kernel, k1.kernel),
                      relative(symbol_from_decomposition(dec, dual_), symbol_from_operator(k1, dual_))});
      }
      return r;
    });
    check("nuclear.adjoint_decomposition", 1e-9, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        const auto direct = symbol_from_operator(adjoint_operator(t), dual_);
        r = std::max(r, relative(adjoint_symbol_via_decomposition(kernel_factorization(t), dual_), direct));
      }
      return r;
    });
    check("nuclear.adjoint_resummation", 1e-9, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.operators; ++k) {
        const auto t = random_operator(space_, rng);
        const auto sigma = symbol_from_operator(t, dual_);
        const auto direct = symbol_from_operator(adjoint_operator(t), dual_);
        const auto via_dec = adjoint_symbol_via_decomposition(kernel_factorization(t), dual_);
        const auto via_sum = adjoint_symbol_via_resummation(sigma);
        r = std::max({r, relative(via_sum, direct), relative(via_sum, via_dec)});
      }
      return r;
    });
    check("nuclear.adjoint_involution", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto s = random_symbol(dual_, rng);
        r = std::max(r, relative(adjoint_symbol_via_resummation(adjoint_symbol_via_resummation(s)), s));
      }
      return std::max(r, max_abs_diff(adjoint_symbol_via_resummation(MatrixSymbol::identity(dual_)),
                                      MatrixSymbol::identity(dual_)));
    });
    check("nuclear.pairing", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto t = random_operator(space_, rng);
        const auto f = random_function(space_, rng);
        const auto g = random_function(space_, rng);
        const cplx lhs = inner(apply(t, f).values, g.values, mu());
        const cplx rhs = inner(f.values, apply(adjoint_operator(t), g).values, mu());
        r = std::max(r, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0));
      }
      return r;
    });
    check("nuclear.self_adjointness", 0.0, [&](SplitMix64& rng) {
      int mismatches = 0;
      for (int k = 0; k < options_.pairs; ++k) {
        const CMatrix a = random_matrix(n(), rng);
        CMatrix kern;
        switch (k % 5) {
          case 0: kern = a + a.adjoint(); break;
          case 1: kern = (a - a.adjoint()) * cplx(0.0, 1.0); break;
          case 2: kern = a - a.adjoint(); break;
          case 3: kern = a; break;
          default: kern = k == 4 ? CMatrix(n(), n()) : a.adjoint() * a; break;
        }
        const LinearOperator t(space_, kern);
        const bool hermitian = max_abs_diff(kern, kern.adjoint()) <= 1e-12 * std::max(kern.max_abs(), 1.0);
        if (self_adjointness_check(t, dual_).self_adjoint != hermitian) ++mismatches;
      }
      return static_cast<double>(mismatches);
    });
    check("nuclear.product", 1e-9, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < options_.pairs; ++k) {
        const auto s = random_operator(space_, rng);
        const auto t = random_operator(space_, rng);
        const auto lambda = product_symbol(symbol_from_operator(s, dual_), kernel_factorization(t));
        r = std::max(r, relative(op_from_symbol(lambda).kernel, compose(s, t).kernel));
      }
      return r;
    });
    check("nuclear.product_identity", 1e-10, [&](SplitMix64& rng) {
      double r = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto t = random_operator(space_, rng);
        const auto s = random_operator(space_, rng);
        const auto lam1 = product_symbol(MatrixSymbol::identity(dual_), kernel_factorization(t));
        r = std::max(r, relative(lam1, symbol_from_operator(t, dual_)));
        const auto lam2 = product_symbol(symbol_from_operator(s, dual_), kernel_factorization(LinearOperator::identity(space_)));
        r = std::max(r, relative(op_from_symbol(lam2).kernel, s.kernel));
      }
      return r;
    });
    check("nuclear.functional_homogeneity", 1e-12, [&](SplitMix64& rng) {
      double r = 0.0;
      const auto s = symbol_from_operator(random_operator(space_, rng), dual_);
      for (double c : {3.0, 0.25})
        for (double e : {0.5, 1.0}) {
          const double base = sufficiency_functional(s, e, 2.0, 2.0);
          const double scaled = sufficiency_functional(s.scaled(c), e, 2.0, 2.0);
          r = std::max(r, std::abs(scaled - std::pow(c, e) * base) / scaled);
        }
      return r;
    });
  }

  void heat() {
    std::optional<BiInvariantLaplacian> lap;
    check("heat.generators", 0.0, [&](SplitMix64&) {
      lap.emplace(laplacian_from_generators(spec_.group, spec_.generators_or_default(), spec_.irreps));
      return 0.0;
    });
    if (!lap) return;
    const auto& l = *lap;
    const auto op_at = [&](double t) { return op_from_symbol(heat_symbol(l, dual_, t)); };
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.1 * i);

    check("heat.schur", 1e-11, [&](SplitMix64&) { return l.schur_residual(); });
    check("heat.eigenvalues", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      for (std::size_t i = 0; i < l.catalog().size(); ++i) {
        r = std::max(r, -l.eigenvalues()[i]);
        const auto& chi = l.catalog()[i]->character;
        const bool trivial = std::all_of(chi.begin(), chi.end(), [](cplx z) { return std::abs(z - 1.0) < 1e-12; });
        if (trivial) r = std::max(r, std::abs(l.eigenvalues()[i]));
      }
      return std::max(r, 0.0);
    });
    check("heat.group_spectrum", 1e-10, [&](SplitMix64&) {
      const auto eig = hermitian_eigen(l.group_matrix());
      std::vector<double> expected;
      for (std::size_t i = 0; i < l.catalog().size(); ++i)
        for (int k = 0; k < l.catalog()[i]->dim * l.catalog()[i]->dim; ++k) expected.push_back(l.eigenvalues()[i]);
      std::sort(expected.rbegin(), expected.rend());
      if (expected.size() != eig.values.size()) return std::numeric_limits<double>::infinity();
      double r = 0.0;
      for (std::size_t i = 0; i < expected.size(); ++i) r = std::max(r, std::abs(expected[i] - eig.values[i]));
      return r;
    });
    const auto lg = descend_laplacian(l, space_);
    check("heat.eigenfunctions", 1e-11, [&](SplitMix64&) {
      double r = 0.0;
      for (const auto& c : dual_->classes()) {
        const double lambda = l.eigenvalue(c.irrep());
        for (int i = 0; i < c.dim(); ++i)
          for (int j = 0; j < c.dim(); ++j) {
            const CosetFunction f(space_, coefficient(c, i, j));
            const auto lf = apply(lg, f);
            for (int x = 0; x < n(); ++x) r = std::max(r, std::abs(lf.values[x] - lambda * f.values[x]));
          }
      }
      return r;
    });
    check("heat.lift", 1e-12, [&](SplitMix64& rng) {
      const auto& g = *spec_.group;
      const auto f = random_function(space_, rng);
      const auto lf = apply(lg, f);
      double r = 0.0;
      for (int x = 0; x < g.order(); ++x) {
        cplx v = 0.0;
        for (int s : l.generators()) v += f.values[space_->coset_of(x)] - f.values[space_->coset_of(g.multiply(x, s))];
        r = std::max(r, std::abs(v - lf.values[space_->coset_of(x)]));
      }
      return r;
    });
    check("heat.trace_formula", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (double t : grid) {
        const double oracle = kernel_diagonal_trace(heat_operator_oracle(l, space_, t)).real();
        r = std::max(r, std::abs(heat_trace(l, dual_, t) - oracle) / oracle);
      }
      return r;
    });
    check("heat.trace_t0", 1e-12, [&](SplitMix64&) { return std::abs(heat_trace(l, dual_, 0.0) - n()); });
    check("heat.trace_three_way", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (double t : grid) {
        const double formula = heat_trace(l, dual_, t);
        const auto sym = heat_symbol(l, dual_, t);
        r = std::max({r, std::abs(nuclear_trace_via_symbol(sym) - formula) / formula,
                      std::abs(kernel_diagonal_trace(op_from_symbol(sym)) - formula) / formula});
      }
      return r;
    });
    check("heat.operator", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (double t : grid) r = std::max(r, relative(op_at(t).kernel, heat_operator_oracle(l, space_, t).kernel));
      return r;
    });
    check("heat.semigroup", 1e-10, [&](SplitMix64&) {
      double r = 0.0;
      for (double a : {0.1, 0.5, 1.0})
        for (double b : {0.1, 0.5, 1.0}) r = std::max(r, relative(compose(op_at(a), op_at(b)).kernel, op_at(a + b).kernel));
      return r;
    });
    check("heat.contraction", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      for (double t : grid) {
        if (t == 0.0) continue;
        const auto eig = hermitian_eigen(op_at(t).matrix());
        r = std::max({r, eig.values.front() - 1.0, -eig.values.back()});
      }
      return std::max(r, 0.0);
    });
    check("heat.trace_monotone", 0.0, [&](SplitMix64&) {
      // Strict decrease is only observable while the decaying part exceeds
      // the rounding level of the t -> infinity limit.
      double limit = 0.0;
      for (const auto& c : dual_->classes())
        if (l.eigenvalue(c.irrep()) <= 1e-12) limit += c.dim() * c.projector().trace().real();
      int violations = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = heat_trace(l, dual_, grid[i]);
        if (v < 1.0 - 1e-12) ++violations;
        if (i == 0) continue;
        const double prev = heat_trace(l, dual_, grid[i - 1]);
        if (v > prev || (prev - limit > 1e-13 * prev && !(v < prev))) ++violations;
      }
      return static_cast<double>(violations);
    });
    check("heat.large_time", 1e-10, [&](SplitMix64&) {
      double lmin = std::numeric_limits<double>::infinity();
      for (const auto& c : dual_->classes()) {
        const double v = l.eigenvalue(c.irrep());
        if (v > 1e-12) lmin = std::min(lmin, v);
      }
      const double t = std::isinf(lmin) ? 1.0 : 50.0 / lmin;
      // Projection onto constants: (Pf)(x) = sum_w mu f(w), kernel all ones.
      CMatrix ones(n(), n());
      for (int x = 0; x < n(); ++x)
        for (int w = 0; w < n(); ++w) ones(x, w) = 1.0;
      return max_abs_diff(op_at(t).kernel, ones);
    });
    check("heat.functional_monotone", 1e-12, [&](SplitMix64&) {
      double r = 0.0;
      double prev = std::numeric_limits<double>::infinity();
      for (double t : grid) {
        const double v = sufficiency_functional(heat_symbol(l, dual_, t), 1.0, 2.0, 2.0);
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        r = std::max(r, v - prev);
        prev = v;
      }
      return std::max(r, 0.0);
    });
  }

  const GroupSpec& spec_;
  VerifyOptions options_;
  SpacePtr space_;
  DualPtr dual_;
  VerificationReport report_;
  std::string pair_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

VerificationReport run_verification(const GroupSpec& spec, const std::string& subgroup, const VerifyOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), options.suite) == names.end())
    throw DomainError("unknown suite '" + options.suite + "'");
  return Runner(spec, subgroup, options).run();
}

std::string format_table(const VerificationReport& report) {
  std::ostringstream out;
  out << "suite " << report.suite << "  pair " << report.group << "/" << report.subgroup << "  seed " << report.seed
      << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-36s %11s %11s  %-4s %10s\n", "check", "residual", "tolerance", "", "time");
  out << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-36s %11s %11s  %-4s %8.1fms\n", c.id.c_str(), sci(c.residual).c_str(),
                  sci(c.tolerance).c_str(), c.passed ? "PASS" : "FAIL", c.seconds * 1e3);
    out << line;
  }
  out << report.passed_count() << "/" << report.checks.size() << " checks passed";
  if (const auto* w = report.worst()) out << "; worst: " << w->id << " (residual " << sci(w->residual) << ")";
  out << "\n";
  return out.str();
}

std::string format_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["id"] = c.id;
    j["pair"] = c.pair;
    j["residual"] = std::isfinite(c.residual) ? Json(c.residual) : Json("inf");
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    checks.push_back(std::move(j));
  }
  Json out;
  out["suite"] = report.suite;
  out["group"] = report.group;
  out["subgroup"] = report.subgroup;
  out["seed"] = report.seed;
  out["checks"] = std::move(checks);
  out["passed"] = report.passed_count();
  out["failed"] = report.failed_count();
  out["ok"] = report.passed();
  if (const auto* w = report.worst()) out["worst"] = w->id;
  return out.dump(2) + "\n";
}

std::string format_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "check,pair,residual,tolerance,status\n";
  char buf[64];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.residual, c.tolerance);
    out << c.id << "," << c.pair << "," << buf << "," << (c.passed ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

}  // namespace cpsi
