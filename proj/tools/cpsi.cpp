#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cpsi/catalog.hpp"
#include "cpsi/fourier.hpp"
#include "cpsi/heat.hpp"
#include "cpsi/nuclear.hpp"
#include "cpsi/quantize.hpp"
#include "cpsi/schatten.hpp"
#include "cpsi/serialize.hpp"
#include "cpsi/verify.hpp"

namespace {

using namespace cpsi;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PairOptions {
  std::string group;
  std::string group_file;
  std::string subgroup;
};

struct OperatorOptions {
  bool random = false;
  std::uint64_t seed = 1;
  std::string kernel_file;
};

void add_pair_options(CLI::App* cmd, PairOptions& p) {
  cmd->add_option("--group", p.group, "Built-in group name (see 'groups list')");
  cmd->add_option("--group-file", p.group_file, "Group spec document (JSON)");
  cmd->add_option("--subgroup", p.subgroup, "Subgroup name from the group spec")->required();
}

void add_operator_options(CLI::App* cmd, OperatorOptions& o) {
  cmd->add_flag("--random", o.random, "Use a random complex Gaussian kernel");
  cmd->add_option("--seed", o.seed, "Seed for --random");
  cmd->add_option("--kernel", o.kernel_file, "Kernel document {size, kernel}");
}

void add_format_option(CLI::App* cmd, std::string& format, const std::string& fallback) {
  format = fallback;
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
}

GroupSpec resolve_group(const PairOptions& p) {
  if (!p.group.empty() && !p.group_file.empty()) throw UsageError("use either --group or --group-file, not both");
  if (!p.group_file.empty()) return load_group_file(p.group_file);
  if (p.group.empty()) throw UsageError("--group or --group-file is required");
  return builtin_group(p.group);
}

struct Context {
  GroupSpec spec;
  SpacePtr space;
  DualPtr dual;
  std::string pair;
};

Context make_context(const PairOptions& p) {
  Context c{resolve_group(p), nullptr, nullptr, ""};
  c.space = coset_space(c.spec.subgroup(p.subgroup));
  c.dual = dual_object(c.space, c.spec.irreps);
  c.pair = c.spec.group->name() + "/" + p.subgroup;
  return c;
}

LinearOperator make_operator(const Context& c, const OperatorOptions& o) {
  if (o.random && !o.kernel_file.empty()) throw UsageError("use either --random or --kernel, not both");
  if (!o.kernel_file.empty()) return kernel_from_json(read_json_file(o.kernel_file), c.space);
  if (!o.random) throw UsageError("an operator is required: --random [--seed N] or --kernel FILE");
  SplitMix64 rng(o.seed);
  return random_operator(c.space, rng);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g %c %.12gi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

std::string csv(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_rows(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& [k, v] : rows) std::cout << k << std::string(w + 2 - k.size(), ' ') << v << "\n";
}

int cmd_groups_list(const std::string& format) {
  Json out = Json::array();
  if (format == "table") std::cout << "name   order  subgroups\n";
  for (const auto& name : builtin_group_names()) {
    const auto spec = builtin_group(name);
    std::string subs;
    Json sj = Json::array();
    for (const auto& [s, h] : spec.subgroups) {
      subs += (subs.empty() ? "" : " ") + s;
      sj.push_back(s);
    }
    if (format == "table") {
      char line[32];
      std::snprintf(line, sizeof line, "%-6s %5d  ", name.c_str(), spec.group->order());
      std::cout << line << subs << "\n";
    } else if (format == "csv") {
      std::cout << name << "," << spec.group->order() << "," << subs << "\n";
    } else {
      out.push_back(Json{{"name", name}, {"order", spec.group->order()}, {"subgroups", std::move(sj)}});
    }
  }
  if (format == "json") std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int cmd_groups_show(const std::string& name, const std::string& file, const std::string& format) {
  const GroupSpec spec = file.empty() ? builtin_group(name) : load_group_file(file);
  if (format == "json") {
    std::cout << to_json(spec).dump(2) << "\n";
    return kExitPass;
  }
  const auto& g = *spec.group;
  std::cout << "group " << g.name() << "\n";
  std::cout << "order " << g.order() << "  cayley " << g.order() << "x" << g.order() << "  "
            << (g.is_abelian() ? "abelian" : "non-abelian") << "\n";
  std::cout << "subgroups\n";
  for (const auto& [s, h] : spec.subgroups) {
    std::cout << "  " << s << "  order " << h.order() << "  index " << g.order() / h.order()
              << (h.is_normal() ? "  normal" : "") << "  {";
    for (std::size_t i = 0; i < h.elements().size(); ++i) std::cout << (i ? "," : "") << h.elements()[i];
    std::cout << "}\n";
  }
  std::cout << "irreps\n";
  for (const auto& rep : spec.irreps) {
    std::cout << "  " << rep->label << "  dim " << rep->dim << "  chi [";
    for (std::size_t i = 0; i < rep->character.size(); ++i) {
      const cplx z = rep->character[i];
      const double re = std::abs(z.real()) < 1e-12 ? 0.0 : z.real();
      const double im = std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag();
      char buf[48];
      if (im == 0.0) std::snprintf(buf, sizeof buf, "%.6g", re);
      else std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
      std::cout << (i ? ", " : "") << buf;
    }
    std::cout << "]\n";
  }
  return kExitPass;
}

int cmd_verify(const PairOptions& p, VerifyOptions options, const std::string& format) {
  const GroupSpec spec = resolve_group(p);
  const auto report = run_verification(spec, p.subgroup, options);
  if (format == "json") std::cout << format_json(report);
  else if (format == "csv") std::cout << format_csv(report);
  else std::cout << format_table(report);
  if (!report.passed()) {
    const auto* w = report.worst();
    std::cerr << "verification failed: " << w->id << " residual " << w->residual << " > tolerance " << w->tolerance
              << "\n";
    return kExitFail;
  }
  return kExitPass;
}

int cmd_heat_trace(const PairOptions& p, double tmin, double tmax, int steps, const std::vector<int>& generators,
                   double tol, const std::string& format) {
  if (steps < 1) throw UsageError("--steps must be at least 1");
  if (tmin < 0.0 || tmax < tmin) throw UsageError("need 0 <= tmin <= tmax");
  const auto c = make_context(p);
  const auto l = laplacian_from_generators(c.spec.group, generators.empty() ? c.spec.generators_or_default() : generators,
                                          c.spec.irreps);
  bool ok = true;
  Json rows = Json::array();
  if (format == "csv") std::cout << "t,trace_formula,trace_oracle,residual\n";
  if (format == "table") std::printf("%8s  %22s  %22s  %10s\n", "t", "trace_formula", "trace_oracle", "residual");
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? tmin : tmin + (tmax - tmin) * i / (steps - 1);
    const double formula = heat_trace(l, c.dual, t);
    const double oracle = kernel_diagonal_trace(heat_operator_oracle(l, c.space, t)).real();
    const double residual = std::abs(formula - oracle) / oracle;
    ok = ok && residual <= tol;
    if (format == "json")
      rows.push_back(Json{{"t", t}, {"trace_formula", formula}, {"trace_oracle", oracle}, {"residual", residual}});
    else if (format == "table")
      std::printf("%8.4f  %22.15g  %22.15g  %10.3e\n", t, formula, oracle, residual);
    else
      std::cout << csv(t) << "," << csv(formula) << "," << csv(oracle) << "," << csv(residual) << "\n";
  }
  if (format == "json") std::cout << Json{{"pair", c.pair}, {"rows", std::move(rows)}}.dump(2) << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_schatten(const PairOptions& p, const OperatorOptions& o, double r, double tol, const std::string& format) {
  const auto c = make_context(p);
  const auto t = make_operator(c, o);
  const auto rep = schatten_criterion_check(t, c.dual, r);
  const bool ok = rep.residual <= tol;
  if (format == "json") {
    std::cout << Json{{"pair", c.pair},          {"r", rep.r},
                      {"quasi_norm", rep.quasi_norm}, {"symbol_side", rep.symbol_side},
                      {"residual", rep.residual},  {"passed", ok}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "pair,r,quasi_norm,symbol_side,residual\n"
              << c.pair << "," << csv(rep.r) << "," << csv(rep.quasi_norm) << "," << csv(rep.symbol_side) << ","
              << csv(rep.residual) << "\n";
  } else {
    print_rows({{"pair", c.pair},
                {"r", num(rep.r)},
                {"||T||_Sr^r", num(rep.quasi_norm)},
                {"symbol side", num(rep.symbol_side)},
                {"residual", num(rep.residual)},
                {"status", ok ? "PASS" : "FAIL"}});
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_trace(const PairOptions& p, const OperatorOptions& o, double tol, const std::string& format) {
  const auto c = make_context(p);
  const auto rep = nuclearity_report(make_operator(c, o), c.dual, 1.0, 2.0, 2.0);
  const bool ok = std::max({rep.residual_kernel_symbol, rep.residual_kernel_eigen, rep.residual_symbol_eigen}) <= tol;
  if (format == "json") {
    std::cout << Json{{"pair", c.pair},
                      {"trace_kernel", to_json(rep.trace_kernel)},
                      {"trace_symbol", to_json(rep.trace_symbol)},
                      {"trace_eigen", to_json(rep.trace_eigen)},
                      {"residual_kernel_symbol", rep.residual_kernel_symbol},
                      {"residual_kernel_eigen", rep.residual_kernel_eigen},
                      {"residual_symbol_eigen", rep.residual_symbol_eigen},
                      {"passed", ok}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "quantity,re,im\n";
    std::cout << "trace_kernel," << csv(rep.trace_kernel.real()) << "," << csv(rep.trace_kernel.imag()) << "\n";
    std::cout << "trace_symbol," << csv(rep.trace_symbol.real()) << "," << csv(rep.trace_symbol.imag()) << "\n";
    std::cout << "trace_eigen," << csv(rep.trace_eigen.real()) << "," << csv(rep.trace_eigen.imag()) << "\n";
    std::cout << "residual_kernel_symbol," << csv(rep.residual_kernel_symbol) << ",0\n";
    std::cout << "residual_kernel_eigen," << csv(rep.residual_kernel_eigen) << ",0\n";
    std::cout << "residual_symbol_eigen," << csv(rep.residual_symbol_eigen) << ",0\n";
  } else {
    print_rows({{"pair", c.pair},
                {"trace (kernel diagonal)", num(rep.trace_kernel)},
                {"trace (symbol)", num(rep.trace_symbol)},
                {"trace (eigenvalues)", num(rep.trace_eigen)},
                {"residual kernel/symbol", num(rep.residual_kernel_symbol)},
                {"residual kernel/eigen", num(rep.residual_kernel_eigen)},
                {"residual symbol/eigen", num(rep.residual_symbol_eigen)},
                {"status", ok ? "PASS" : "FAIL"}});
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_symbol_dump(const PairOptions& p, const OperatorOptions& o, const std::string& format) {
  const auto c = make_context(p);
  const auto sigma = symbol_from_operator(make_operator(c, o), c.dual);
  if (format == "json") {
    std::cout << to_json(sigma).dump(2) << "\n";
    return kExitPass;
  }
  if (format == "csv") {
    std::cout << "class,dim,coset,row,col,re,im\n";
    for (std::size_t k = 0; k < c.dual->size(); ++k)
      for (int x = 0; x < c.space->size(); ++x) {
        const auto& b = sigma.at(x, k);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j)
            std::cout << c.dual->at(k).irrep().label << "," << c.dual->at(k).dim() << "," << x << "," << i << "," << j
                      << "," << csv(b(i, j).real()) << "," << csv(b(i, j).imag()) << "\n";
      }
    return kExitPass;
  }
  std::cout << "symbol of " << c.pair << "  cosets " << c.space->size() << "  classes " << c.dual->size() << "\n";
  for (std::size_t k = 0; k < c.dual->size(); ++k) {
    const auto& cls = c.dual->at(k);
    std::cout << "class " << cls.irrep().label << "  dim " << cls.dim() << "  rank " << cls.projection.rank << "\n";
    for (int x = 0; x < c.space->size(); ++x) {
      const auto& b = sigma.at(x, k);
      for (std::size_t i = 0; i < b.rows(); ++i) {
        std::cout << (i == 0 ? "  coset " + std::to_string(x) : std::string(8 + std::to_string(x).size(), ' ')) << "  [";
        for (std::size_t j = 0; j < b.cols(); ++j) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%s%10.6f%+10.6fi", j ? "  " : "", b(i, j).real(), b(i, j).imag());
          std::cout << buf;
        }
        std::cout << " ]\n";
      }
    }
  }
  return kExitPass;
}

int cmd_nuclearity(const PairOptions& p, const OperatorOptions& o, double r, double p1, double p2, double tol,
                   const std::string& format) {
  const auto c = make_context(p);
  const auto rep = nuclearity_report(make_operator(c, o), c.dual, r, p1, p2);
  const bool ok = std::max({rep.residual_kernel_symbol, rep.residual_kernel_eigen, rep.residual_symbol_eigen}) <= tol;
  if (format == "json") {
    std::cout << Json{{"pair", c.pair},  {"r", r},
                      {"p1", p1},        {"p2", p2},
                      {"functional", rep.functional}, {"cost", rep.cost},
                      {"terms", rep.terms}, {"trace", to_json(rep.trace_kernel)},
                      {"passed", ok}}
                     .dump(2)
              << "\n";
  } else if (format == "csv") {
    std::cout << "pair,r,p1,p2,functional,cost,terms\n"
              << c.pair << "," << csv(r) << "," << csv(p1) << "," << csv(p2) << "," << csv(rep.functional) << ","
              << csv(rep.cost) << "," << rep.terms << "\n";
  } else {
    print_rows({{"pair", c.pair},
                {"r, p1, p2", num(r) + ", " + num(p1) + ", " + num(p2)},
                {"sufficiency functional", num(rep.functional)},
                {"decomposition cost", num(rep.cost)},
                {"terms", std::to_string(rep.terms)},
                {"trace", num(rep.trace_kernel)},
                {"status", ok ? "PASS" : "FAIL"}});
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_transform(const PairOptions& p, const std::string& input, bool inverse) {
  const auto c = make_context(p);
  const Json doc = read_json_file(input);
  if (inverse) std::cout << to_json(inverse_transform(fourier_from_json(doc, c.dual))).dump(2) << "\n";
  else std::cout << to_json(forward_transform(coset_function_from_json(doc, c.space), c.dual)).dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-differential calculus on coset spaces of finite groups"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 pass, 1 verification failure, 2 usage or input error.\n"
      "heat-trace CSV columns: t, trace_formula (sum d e^{-t lambda} Tr T_H), trace_oracle (trace of the\n"
      "matrix exponential of the descended Laplacian), residual (relative difference).");

  std::string format;
  std::string heat_format;
  PairOptions pair;
  OperatorOptions op;

  auto* groups = app.add_subcommand("groups", "Inspect the built-in group catalog");
  groups->require_subcommand(1);
  auto* groups_list = groups->add_subcommand("list", "List built-in groups");
  std::string list_format = "table";
  groups_list->add_option("--format", list_format)->check(CLI::IsMember({"table", "json", "csv"}));
  auto* groups_show = groups->add_subcommand("show", "Show a group: table size, subgroups, irreps and characters");
  std::string show_name, show_file, show_format = "table";
  groups_show->add_option("name", show_name, "Built-in group name");
  groups_show->add_option("--file", show_file, "Group spec document instead of a built-in name");
  groups_show->add_option("--format", show_format)->check(CLI::IsMember({"table", "json"}));

  auto* verify = app.add_subcommand("verify", "Run the verification suites for one (G, H) pair");
  add_pair_options(verify, pair);
  VerifyOptions vopt;
  verify->add_option("--suite", vopt.suite, "Suite to run")->check(CLI::IsMember(suite_names()));
  double vtol = 0.0;
  auto* vtol_opt = verify->add_option("--tol", vtol, "Override every check tolerance");
  verify->add_option("--seed", vopt.seed, "Seed for random inputs");
  add_format_option(verify, format, "table");

  auto* heat = app.add_subcommand("heat-trace", "Heat trace formula against the matrix-exponential oracle (CSV)");
  add_pair_options(heat, pair);
  double tmin = 0.0, tmax = 2.0, heat_tol = 1e-10;
  int steps = 21;
  std::vector<int> generators;
  heat->add_option("--tmin", tmin, "First time");
  heat->add_option("--tmax", tmax, "Last time");
  heat->add_option("--steps", steps, "Number of equally spaced times");
  heat->add_option("--generators", generators, "Laplacian generating multiset (element indices)")->delimiter(',');
  heat->add_option("--tol", heat_tol, "Relative tolerance for the exit status");
  add_format_option(heat, heat_format, "csv");

  auto* schatten = app.add_subcommand("schatten", "Schatten criterion: ||T||_Sr^r against the |T|^{r/2} symbol");
  add_pair_options(schatten, pair);
  add_operator_options(schatten, op);
  double r = 1.0, schatten_tol = 1e-9;
  schatten->add_option("--r", r, "Schatten exponent (> 0)")->required();
  schatten->add_option("--tol", schatten_tol, "Relative tolerance for the exit status");
  add_format_option(schatten, format, "table");

  auto* trace = app.add_subcommand("trace", "Kernel, symbol and eigenvalue traces of one operator");
  add_pair_options(trace, pair);
  add_operator_options(trace, op);
  double trace_tol = 1e-10;
  trace->add_option("--tol", trace_tol, "Relative tolerance for the exit status");
  add_format_option(trace, format, "table");

  auto* symbol = app.add_subcommand("symbol", "Matrix-valued symbols");
  symbol->require_subcommand(1);
  auto* dump = symbol->add_subcommand("dump", "Print the symbol of an operator per dual class");
  add_pair_options(dump, pair);
  add_operator_options(dump, op);
  add_format_option(dump, format, "table");

  auto* nuclearity = app.add_subcommand("nuclearity", "Sufficiency functional and decomposition cost");
  add_pair_options(nuclearity, pair);
  add_operator_options(nuclearity, op);
  double nr = 1.0, p1 = 2.0, p2 = 2.0, nuc_tol = 1e-10;
  nuclearity->add_option("--r", nr, "Exponent in (0, 1]");
  nuclearity->add_option("--p1", p1, "Index p1 in [1, inf)");
  nuclearity->add_option("--p2", p2, "Index p2 in [1, inf)");
  nuclearity->add_option("--tol", nuc_tol, "Relative tolerance for the trace residuals");
  add_format_option(nuclearity, format, "table");

  auto* transform = app.add_subcommand("transform", "Fourier transform of a function document (JSON in, JSON out)");
  add_pair_options(transform, pair);
  std::string input;
  bool inverse = false;
  transform->add_option("--input", input, "Function {size, values} or coefficients {classes}")->required();
  transform->add_flag("--inverse", inverse, "Invert coefficients instead of transforming a function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (groups_list->parsed()) return cmd_groups_list(list_format);
    if (groups_show->parsed()) {
      if (show_name.empty() == show_file.empty()) throw UsageError("give a group name or --file");
      return cmd_groups_show(show_name, show_file, show_format);
    }
    if (verify->parsed()) {
      if (vtol_opt->count() > 0) vopt.tolerance = vtol;
      return cmd_verify(pair, vopt, format);
    }
    if (heat->parsed()) return cmd_heat_trace(pair, tmin, tmax, steps, generators, heat_tol, heat_format);
    if (schatten->parsed()) return cmd_schatten(pair, op, r, schatten_tol, format);
    if (trace->parsed()) return cmd_trace(pair, op, trace_tol, format);
    if (dump->parsed()) return cmd_symbol_dump(pair, op, format);
    if (nuclearity->parsed()) return cmd_nuclearity(pair, op, nr, p1, p2, nuc_tol, format);
    if (transform->parsed()) return cmd_transform(pair, input, inverse);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
