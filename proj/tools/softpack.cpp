// softpack: bound tables, densities, verification suites, optimisation and
// lattice constants from the command line.
//
// Exit codes: 0 ok, 2 usage or domain error, 3 bad input data, 4 failed check.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softpack/softpack.hpp"

namespace {

using namespace softpack;

constexpr const char* kVersion = "softpack 1.0.0";

enum Exit { kOk = 0, kUsage = 2, kInput = 3, kVerify = 4 };

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SOFTPACK_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw DomainError(std::string("SOFTPACK_SEED is not an unsigned integer: ") + s);
    }
  }
  return 0;
}

// Accepts 1000000, 1e6, 1.5e7.
std::uint64_t parse_count(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v >= 1.0) || v > 1e15 || v != std::floor(v))
    throw DomainError(std::string(what) + " must be a positive integer, got '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("seed must be an unsigned integer, got '" + s + "'");
  return v;
}

std::string or_default(const std::string& s, const char* fallback) { return s.empty() ? fallback : s; }

std::vector<std::string> metadata(const std::vector<std::string>& args, std::uint64_t seed) {
  std::string flags;
  for (const auto& a : args) flags += (flags.empty() ? "" : " ") + a;
  return {kVersion, "seed=" + std::to_string(seed), "flags=" + flags};
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
}

std::string history_path(const std::string& out) {
  std::string base = out;
  if (ends_with(base, ".json")) base.resize(base.size() - 5);
  return base + ".history.csv";
}

struct Flags {
  // bounds
  int dim = 2;
  double lambda_min = 0.0, lambda_max = 0.15;
  int steps = 16;
  std::string out, format = "wide";
  std::string samples;  // per-command default
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  // density
  std::string packing;
  double lambda = 0.0;
  std::vector<std::string> mc;
  std::string walk_out;
  // verify
  std::string suite;
  int grid = 100;
  // optimize
  int n = 2, restarts = 20, max_iters = 3000, stages = 4;
  bool no_lattice_seed = false;
  // lattice
  std::string kind = "fcc3d", check = "density";
  double lambda_bar = 0.0;
};

int cmd_bounds(const Flags& f, const std::vector<std::string>& args) {
  if (f.dim < 2) throw DomainError("--dim must be at least 2");
  if (!(f.lambda_min >= 0.0) || !(f.lambda_max >= f.lambda_min))
    throw DomainError("need 0 <= --lambda-min <= --lambda-max");
  if (f.steps < 1) throw DomainError("--steps must be positive");
  std::vector<double> grid;
  for (int i = 0; i < f.steps; ++i)
    grid.push_back(f.steps == 1 ? f.lambda_min : f.lambda_min + (f.lambda_max - f.lambda_min) * i / (f.steps - 1));
  const std::uint64_t seed = f.seed.value_or(default_seed());
  McOptions mc;
  mc.samples = parse_count(or_default(f.samples, "100000"), "--samples");
  mc.seed = seed;
  mc.threads = f.threads;
  const auto rows = bound_table(f.dim, grid, mc);
  const auto meta = metadata(args, seed);
  if (f.format == "wide") emit(f.out, bounds_csv_wide(rows, meta));
  else if (f.format == "long") emit(f.out, bounds_csv_long(rows, meta));
  else if (f.format == "json") emit(f.out, bounds_to_json(rows).dump(2) + "\n");
  else throw DomainError("--format must be wide, long or json");
  return kOk;
}

int cmd_density(const Flags& f) {
  const Packing p = read_packing(f.packing);
  if (p.empty()) throw InputError("packing has no centers");
  const ValidationReport v = validate_packing(p);
  if (!v.valid) {
    std::ostringstream os;
    os << "packing is not valid: centers " << v.offending_pair->first << " and " << v.offending_pair->second
       << " are " << format_number(v.min_pair_distance) << " apart (< 2)";
    throw InputError(os.str());
  }
  if (!(f.lambda >= 0.0)) throw DomainError("--lambda must be non-negative");
  const Inflation infl = classify_regime(p.dim(), f.lambda);
  const int d = p.dim();
  std::cout << "n " << p.size() << "\ndim " << d << "\nlambda " << format_number(f.lambda) << "\nlambda_bar "
            << format_number(infl.lambda_bar) << "\nregime " << to_string(infl.regime) << "\n";

  double measure = 0.0;
  const bool exact = f.mc.empty() && infl.regime == Regime::Pairwise && (d == 2 || d == 3);
  if (exact) {
    measure = d == 2 ? union_area_exact(p, infl) : union_volume_exact(p, infl);
    std::cout << "method exact\nmeasure " << format_number(measure) << "\n";
  } else {
    McOptions mc;
    mc.samples = f.mc.empty() ? 1'000'000 : parse_count(f.mc[0], "--mc samples");
    mc.seed = f.mc.size() > 1 ? parse_seed(f.mc[1]) : default_seed();
    mc.threads = f.threads;
    const MCEstimate e = union_measure_mc(p, infl.lambda_bar, mc);
    measure = e.value;
    std::cout << "method monte-carlo\nsamples " << e.samples << "\nseed " << e.seed << "\nmeasure "
              << format_number(e.value) << "\nstderr " << format_number(e.std_error) << "\n";
  }
  const double density = static_cast<double>(p.size()) * unit_ball_volume(d) / measure;
  std::cout << "density " << format_number(density) << "\ncontacts " << contact_count(p) << "\nlambda_edges "
            << lambda_graph(p, infl.lambda_bar).edges.size() << "\n";
  if (d == 2 && infl.lambda_bar < 2.0 / std::sqrt(3.0)) {
    const BoundaryWalk w = boundary_walk(lambda_graph(p, infl.lambda_bar), p);
    std::cout << "boundary_perim " << format_number(w.perim) << "\ncomponents " << w.component_count << "\n";
    if (!f.walk_out.empty()) write_text(f.walk_out, boundary_walk_to_json(w, p).dump(2) + "\n");
  } else if (!f.walk_out.empty()) {
    throw DomainError("--walk-out needs a planar packing with lambda-bar < 2/sqrt(3)");
  }
  return kOk;
}

int cmd_verify(const Flags& f) {
  VerifyOptions o;
  o.grid = f.grid;
  o.samples = parse_count(or_default(f.samples, "1000000"), "--samples");
  o.seed = f.seed.value_or(default_seed());
  o.threads = f.threads;
  const auto checks = run_suite(f.suite, o);
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.detail << "]\n";
    ok = ok && c.passed;
  }
  std::cout << (ok ? "all checks passed\n" : "some checks FAILED\n");
  return ok ? kOk : kVerify;
}

int cmd_optimize(const Flags& f, const std::vector<std::string>& args) {
  if (f.n < 2) throw DomainError("--n must be at least 2");
  OptimizerConfig cfg;
  cfg.restarts = f.restarts;
  cfg.max_iters = f.max_iters;
  cfg.continuation_stages = f.stages;
  cfg.seed_exact_lattice = !f.no_lattice_seed;
  cfg.seed = f.seed.value_or(default_seed());
  cfg.threads = f.threads;
  const OptimizerResult r = optimize(static_cast<std::size_t>(f.n), f.dim, f.lambda, cfg);
  std::cout << "objective " << format_number(r.objective) << "\ndensity " << format_number(r.density)
            << "\ncontacts " << r.contact_count << "\nlambda_edges " << r.lambda_edge_count << "\nconverged "
            << (r.converged ? "yes" : "no") << "\n";
  if (!r.converged) std::cerr << "warning: best restart did not converge within --max-iters\n";
  if (!f.out.empty()) {
    write_text(f.out, optimizer_result_to_json(r, f.lambda).dump(2) + "\n");
    write_text(history_path(f.out), history_csv(r, metadata(args, cfg.seed)));
  }
  return kOk;
}

int cmd_lattice(const Flags& f) {
  const LatticeKind kind = parse_lattice_kind(f.kind);
  const double pi = std::numbers::pi;
  auto report = [](const std::string& what, double value, double ref, const std::string& ref_label) {
    std::cout << what << " " << format_number(value) << "\nreference " << ref_label << " = " << format_number(ref)
              << "\ndeviation " << format_number(value - ref) << "\n";
  };
  if (f.check == "density") {
    static const double refs[] = {pi / std::sqrt(12.0), pi / 4.0, pi / std::sqrt(18.0), pi * std::sqrt(3.0) / 8.0};
    static const char* labels[] = {"pi/sqrt(12)", "pi/4", "pi/sqrt(18)", "pi sqrt(3)/8"};
    const int k = static_cast<int>(kind);
    report("density", lattice_density(kind), refs[k], labels[k]);
  } else if (f.check == "covering") {
    static const double refs[] = {2.0 / std::sqrt(3.0), std::sqrt(2.0), std::sqrt(2.0), std::sqrt(5.0 / 3.0)};
    static const char* labels[] = {"2/sqrt(3)", "sqrt(2)", "sqrt(2)", "sqrt(5/3)"};
    const int k = static_cast<int>(kind);
    report("covering_radius", lattice_covering_radius(kind), refs[k], labels[k]);
  } else if (f.check == "covering-mc") {
    if (kind != LatticeKind::Bcc3d) throw DomainError("--check covering-mc is implemented for bcc3d only");
    McOptions mc;
    mc.samples = parse_count(or_default(f.samples, "1000000"), "--samples");
    mc.seed = f.seed.value_or(default_seed());
    mc.threads = f.threads;
    const double lb = f.lambda_bar > 0.0 ? f.lambda_bar : lattice_covering_radius(kind);
    const MCEstimate e = bcc_covering_check(lb, mc);
    std::cout << "lambda_bar " << format_number(lb) << "\ncovered_fraction " << format_number(e.value)
              << "\nstderr " << format_number(e.std_error) << "\nsamples " << e.samples << "\nseed " << e.seed << "\n";
  } else {
    throw DomainError("--check must be density, covering or covering-mc");
  }
  return kOk;
}

int cmd_constants() {
  const Constants c = constants();
  std::cout.precision(15);
  std::cout << "phi0 " << c.phi0 << "\npsi0 " << c.psi0 << "\nlambda_bar_root " << c.lambda_bar_root << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outer parallel domains of unit-ball packings: bounds, densities, checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  auto add_seed = [&](CLI::App* c) {
    c->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { f.seed = s; },
                                          "random seed (default: $SOFTPACK_SEED or 0)");
    c->add_option("--threads", f.threads, "worker threads for Monte Carlo / restarts")->check(CLI::PositiveNumber);
  };

  auto* bounds = app.add_subcommand("bounds", "table of density bounds over a lambda grid");
  bounds->add_option("--dim", f.dim, "dimension d")->required();
  bounds->add_option("--lambda-min", f.lambda_min, "first lambda");
  bounds->add_option("--lambda-max", f.lambda_max, "last lambda");
  bounds->add_option("--steps", f.steps, "number of grid points");
  bounds->add_option("--out", f.out, "output file (default stdout)");
  bounds->add_option("--format", f.format, "wide | long | json");
  bounds->add_option("--samples", f.samples, "Monte Carlo samples for tau3 / sigma_d entries")->default_str("100000");
  add_seed(bounds);

  auto* density = app.add_subcommand("density", "union measure and density of a packing file");
  density->add_option("--packing", f.packing, "packing file (.json or .csv)")->required();
  density->add_option("--lambda", f.lambda, "inflation lambda")->required();
  density->add_option("--mc", f.mc, "force Monte Carlo: SAMPLES [SEED]")->expected(1, 2);
  density->add_option("--walk-out", f.walk_out, "write the boundary walk as JSON (2D)");
  density->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", f.suite, "constants | groemer | rogersF | scans | sigma-consistency | gram | covering | all")
      ->required();
  verify->add_option("--grid", f.grid, "grid resolution / number of random packings");
  verify->add_option("--samples", f.samples, "Monte Carlo samples")->default_str("1000000");
  add_seed(verify);

  auto* opt = app.add_subcommand("optimize", "minimise the union measure of n unit balls");
  opt->add_option("--n", f.n, "number of balls")->required();
  opt->add_option("--dim", f.dim, "dimension (2 or 3)");
  opt->add_option("--lambda", f.lambda, "inflation lambda")->required();
  opt->add_option("--restarts", f.restarts, "restarts");
  opt->add_option("--max-iters", f.max_iters, "iterations per restart");
  opt->add_option("--stages", f.stages, "lambda continuation stages (1 disables)")->check(CLI::PositiveNumber);
  opt->add_flag("--no-lattice-seed", f.no_lattice_seed, "do not start restart 0 from the exact lattice prefix");
  opt->add_option("--out", f.out, "result JSON; history goes to <out>.history.csv");
  add_seed(opt);

  auto* lattice = app.add_subcommand("lattice", "lattice constants");
  lattice->add_option("--kind", f.kind, "hexagonal2d | square2d | fcc3d | bcc3d (fcc, bcc accepted)");
  lattice->add_option("--check", f.check, "density | covering | covering-mc");
  lattice->add_option("--lambda-bar", f.lambda_bar, "radius for covering-mc (default: covering radius)");
  lattice->add_option("--samples", f.samples, "Monte Carlo samples")->default_str("1000000");
  add_seed(lattice);

  app.add_subcommand("constants", "phi0, psi0 and Lambda-bar");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(f, args);
    if (density->parsed()) return cmd_density(f);
    if (verify->parsed()) return cmd_verify(f);
    if (opt->parsed()) return cmd_optimize(f, args);
    if (lattice->parsed()) return cmd_lattice(f);
    return cmd_constants();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
