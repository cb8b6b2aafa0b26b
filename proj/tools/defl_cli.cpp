// defl: generate test matrices, solve systems with deflated Krylov methods,
// run the bundled experiments and manage saved deflation bases.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "config.hpp"
#include "defl/basis_io.hpp"
#include "defl/bicgstab.hpp"
#include "defl/generators.hpp"
#include "defl/left_basis.hpp"
#include "defl/matrix_market.hpp"
#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace defl;
using bench::ConfigMap;

namespace {

constexpr int kConverged = 0;
constexpr int kInputError = 1;
constexpr int kNotConverged = 2;

// Options that may also come from a config file. A flag given on the
// command line overrides the file, which overrides the built-in default.
struct Layered {
  ConfigMap defaults;
  ConfigMap flags;
  std::string config_path;

  void option(CLI::App* app, const std::string& key, const std::string& fallback, const std::string& help) {
    defaults[key] = fallback;
    app->add_option_function<std::string>("--" + key, [this, key](const std::string& v) { flags[key] = v; },
                                          help + " (default " + fallback + ")");
  }

  ConfigMap resolve() const {
    ConfigMap file = config_path.empty() ? ConfigMap{} : bench::load_config(config_path);
    for (const auto& [k, v] : file)
      if (!defaults.count(k)) throw Error(config_path + ": unknown key '" + k + "'");
    return bench::merge_layers(bench::merge_layers(defaults, file), flags);
  }
};

double number(const ConfigMap& c, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(c.at(key), &used);
    if (used != c.at(key).size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error(key + ": '" + c.at(key) + "' is not a number");
  }
}

Index integer(const ConfigMap& c, const std::string& key) {
  const double v = number(c, key);
  if (v != static_cast<double>(static_cast<Index>(v))) throw Error(key + " must be an integer");
  return static_cast<Index>(v);
}

void write_outputs(const std::string& dir, const SolveReport& report, const Vector* x) {
  fs::create_directories(dir);
  std::ofstream(fs::path(dir) / "report.json") << report_to_json(report, false).dump(2) << "\n";
  std::ofstream csv(fs::path(dir) / "history.csv");
  write_history_csv(csv, report);
  if (x) write_dense_matrix_market((fs::path(dir) / "x.mtx").string(), Matrix(*x));
}

void print_summary(const SolveReport& r) {
  std::printf("%s: %s, %lld matvecs, relative residual %.3e\n", r.method.c_str(),
              r.converged ? "converged" : "not converged", static_cast<long long>(r.matvecs()),
              r.relative_residual());
  for (const auto& f : r.flags) std::printf("  flag: %s\n", f.c_str());
}

Vector load_rhs(const std::string& path, Index n, std::uint64_t seed) {
  if (path.empty()) return make_rhs(n, rhs::RandomNormal{}, seed);
  const Matrix b = read_dense_matrix_market(path);
  if (b.rows() != n || b.cols() != 1) throw Error(path + ": expected an " + std::to_string(n) + " x 1 vector");
  return b.col(0);
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "bidiagonal";
  Index n = 2000;
  Index bandwidth = Gamma5Defaults::bandwidth;
  double shift = Gamma5Defaults::shift;
  std::uint64_t seed = Gamma5Defaults::seed;
  std::string output;
  std::string rhs_output;
  std::uint64_t rhs_seed = bench::kDefaultSeed;
};

int cmd_generate(const GenerateArgs& g) {
  if (g.kind == "bidiagonal") {
    write_matrix_market(g.output, make_bidiagonal(g.n));
  } else if (g.kind == "gamma5") {
    const Index n = g.n == 2000 ? Gamma5Defaults::n : g.n;
    write_matrix_market(g.output, make_gamma5_matrix(n, g.bandwidth, g.shift, g.seed).matrix);
  } else if (g.kind == "identity") {
    write_matrix_market(g.output, CsrMatrix::identity(g.n));
  } else {
    throw Error("unknown matrix kind '" + g.kind + "'");
  }
  if (!g.rhs_output.empty()) {
    const CsrMatrix a = read_matrix_market(g.output);
    write_dense_matrix_market(g.rhs_output, Matrix(make_rhs(a.dimension(), rhs::RandomNormal{}, g.rhs_seed)));
  }
  std::printf("wrote %s\n", g.output.c_str());
  return kConverged;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
  std::string matrix;
  std::string rhs;
  std::string basis_dir;
  std::string export_basis;
  std::string output = "solve_out";
};

int cmd_solve(const SolveArgs& s, const ConfigMap& c) {
  CsrOperator a(read_matrix_market(s.matrix));
  const Index n = a.dimension();
  const Vector b = load_rhs(s.rhs, n, static_cast<std::uint64_t>(integer(c, "seed")));
  const std::string method = c.at("method");
  const Index m = integer(c, "m");
  const Index k = integer(c, "k");
  const double rtol = number(c, "rtol");
  const Count budget = integer(c, "max_matvecs");

  auto need_basis = [&]() {
    if (s.basis_dir.empty()) throw Error(method + " needs --basis");
    return import_basis(s.basis_dir, a.matrix());
  };

  SolveReport report;
  Vector x;
  if (method == "gmres") {
    auto r = gmres_restarted(a, Vector::Zero(n), b, m, rtol, budget);
    x = std::move(r.x);
    report = std::move(r.report);
  } else if (method == "gmres-dr") {
    auto r = gmres_dr_solve(a, b, GmresDrConfig{m, k, rtol, budget});
    if (!s.export_basis.empty()) export_basis(s.export_basis, r.basis, a.matrix());
    x = std::move(r.x);
    report = std::move(r.report);
  } else if (method == "bicgstab") {
    auto r = bicgstab_solve(a, Vector::Zero(n), b, rtol, budget);
    x = std::move(r.x);
    report = std::move(r.report);
  } else if (method == "gmres-proj" || method == "bicgstab-proj" || method == "bicgstab-lr") {
    MultiRhsSession session(a, need_basis());
    SolveResult r;
    if (method == "gmres-proj") {
      r = gmres_proj_solve(session, b,
                           GmresProjConfig{m, k, {integer(c, "f"), integer(c, "phase")}, rtol, budget});
    } else if (method == "bicgstab-proj") {
      r = bicgstab_proj_solve(session, b, k, rtol, budget);
    } else {
      const Index kk = k < 0 ? session.basis().k() : k;
      const DeflationBasis right = session.basis().truncated(kk);
      const auto left = compute_left_basis(
          a, LeftBasisConfig{40, std::max<Index>(20, kk), kk, 20, 1e-8, static_cast<std::uint64_t>(integer(c, "seed"))});
      std::printf("left vectors: %lld matvecs with the adjoint\n", static_cast<long long>(left.report.matvecs()));
      CostLedger setup_ledger;
      VectorOps ops(setup_ledger);
      session.set_left_right(LeftRightBasis::from_deflation(right, left.w, ops));
      r = bicgstab_lr_solve(session, b, rtol, budget);
    }
    x = std::move(r.x);
    report = std::move(r.report);
  } else {
    throw Error("unknown method '" + method + "'");
  }
  write_outputs(s.output, report, &x);
  print_summary(report);
  return report.converged ? kConverged : kNotConverged;
}

// --- experiment ----------------------------------------------------------------

int cmd_experiment(const std::string& id, std::uint64_t seed, const std::vector<std::string>& sets,
                   const std::string& config, const std::string& output) {
  bench::ExperimentSpec spec;
  spec.id = id;
  spec.seed = seed;
  spec.output_dir = output.empty() ? "runs/" + id : output;
  ConfigMap flags;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value, got '" + s + "'");
    flags[s.substr(0, eq)] = s.substr(eq + 1);
  }
  spec.overrides = bench::merge_layers(config.empty() ? ConfigMap{} : bench::load_config(config), flags);
  if (auto it = spec.overrides.find("seed"); it != spec.overrides.end()) {
    spec.seed = static_cast<std::uint64_t>(spec.get_index("seed", 0));
    spec.overrides.erase(it);
  }
  const auto run = bench::run_experiment(spec);
  std::printf("%s: %zu solves, %lld matvecs, %lld model flops; artifacts in %s\n", id.c_str(), run.solves.size(),
              static_cast<long long>(run.total_matvecs()), static_cast<long long>(run.total_flops()),
              spec.output_dir.c_str());
  // Experiments deliberately include runs that stop on their budget, so
  // completion is success.
  return kConverged;
}

// --- basis -------------------------------------------------------------------

int cmd_basis_inspect(const std::string& dir, const std::string& matrix) {
  BasisHeader header;
  DeflationBasis basis = matrix.empty() ? read_basis(dir, &header) : DeflationBasis{};
  std::optional<CsrOperator> a;
  if (!matrix.empty()) {
    a.emplace(read_matrix_market(matrix));
    basis = import_basis(dir, a->matrix());
    read_basis(dir, &header);
  }
  std::printf("n = %lld, k = %lld, rows = %lld, field = %s, matrix checksum %s\n", static_cast<long long>(header.n),
              static_cast<long long>(header.k), static_cast<long long>(header.rows), to_string(header.field),
              checksum_hex(header.matrix_checksum).c_str());
  std::printf("orthogonality error %.3e\n", basis.orthogonality_error());
  if (a) std::printf("recurrence residual %.3e\n", basis.recurrence_residual(*a));
  std::printf("harmonic Ritz values (ascending modulus):\n");
  for (Index i = 0; i < header.harmonic_values.size(); ++i) {
    const Scalar t = header.harmonic_values(i);
    std::printf("  %3lld  %.6e %+.6ei  |%.6e|\n", static_cast<long long>(i + 1), t.real(), t.imag(), std::abs(t));
  }
  return kConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deflated Krylov solvers for multiple right-hand sides"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a test matrix (and optionally a right-hand side)");
  generate->add_option("kind", gen.kind, "bidiagonal | gamma5 | identity")->required();
  generate->add_option("-o,--output", gen.output, "Matrix Market output file")->required();
  generate->add_option("--n", gen.n, "dimension (gamma5 default 1536)");
  generate->add_option("--bandwidth", gen.bandwidth, "gamma5 block bandwidth");
  generate->add_option("--shift", gen.shift, "gamma5 diagonal shift");
  generate->add_option("--seed", gen.seed, "gamma5 matrix seed");
  generate->add_option("--rhs-output", gen.rhs_output, "also write a random normal right-hand side here");
  generate->add_option("--rhs-seed", gen.rhs_seed, "seed for --rhs-output");

  SolveArgs sa;
  Layered solve_cfg;
  auto* solve = app.add_subcommand("solve", "Solve A x = b");
  solve->add_option("matrix", sa.matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  solve->add_option("--rhs", sa.rhs, "right-hand side (dense n x 1 Matrix Market); random normal when omitted");
  solve->add_option("--basis", sa.basis_dir, "saved deflation basis for the projection methods");
  solve->add_option("--export-basis", sa.export_basis, "gmres-dr: save the deflation basis here");
  solve->add_option("-o,--output", sa.output, "directory for report.json, history.csv and x.mtx");
  solve->add_option("--config", solve_cfg.config_path, "flat key = value file with defaults for the options below");
  solve_cfg.option(solve, "method", "gmres-dr", "gmres | gmres-dr | bicgstab | gmres-proj | bicgstab-proj | bicgstab-lr");
  solve_cfg.option(solve, "m", "25", "subspace dimension");
  solve_cfg.option(solve, "k", "10", "deflation vectors (-1: all in the basis)");
  solve_cfg.option(solve, "rtol", "1e-6", "relative residual tolerance");
  solve_cfg.option(solve, "max_matvecs", "100000", "matrix-vector product budget");
  solve_cfg.option(solve, "f", "1", "gmres-proj: project before every f-th cycle");
  solve_cfg.option(solve, "phase", "1", "gmres-proj: 1 projects before cycle 1, f+1, ...; 0 before f, 2f, ...");
  solve_cfg.option(solve, "seed", std::to_string(bench::kDefaultSeed), "seed for a generated right-hand side");

  std::string exp_id, exp_config, exp_output;
  std::uint64_t exp_seed = bench::kDefaultSeed;
  std::vector<std::string> exp_sets;
  auto* experiment = app.add_subcommand("experiment", "Run a bundled experiment and write tables and curves");
  experiment->add_option("id", exp_id, "experiment id")->required()->check(CLI::IsMember(bench::experiment_ids()));
  experiment->add_option("--seed", exp_seed, "seed base for the right-hand sides");
  experiment->add_option("--set", exp_sets, "override, key=value (repeatable)");
  experiment->add_option("--config", exp_config, "flat key = value file of overrides");
  experiment->add_option("-o,--output", exp_output, "artifact directory (default runs/<id>)");

  auto* basis = app.add_subcommand("basis", "Export, import or inspect a saved deflation basis");
  basis->require_subcommand(1);
  std::string b_matrix, b_dir, b_rhs;
  Layered export_cfg;
  auto* bexport = basis->add_subcommand("export", "Run GMRES-DR and save its deflation basis");
  bexport->add_option("matrix", b_matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  bexport->add_option("dir", b_dir, "output directory")->required();
  bexport->add_option("--rhs", b_rhs, "right-hand side; random normal when omitted");
  bexport->add_option("--config", export_cfg.config_path, "flat key = value file");
  export_cfg.option(bexport, "m", "25", "subspace dimension");
  export_cfg.option(bexport, "k", "10", "deflation vectors");
  export_cfg.option(bexport, "rtol", "1e-6", "relative residual tolerance");
  export_cfg.option(bexport, "max_matvecs", "100000", "matrix-vector product budget");
  export_cfg.option(bexport, "seed", std::to_string(bench::kDefaultSeed), "seed for a generated right-hand side");
  auto* bimport = basis->add_subcommand("import", "Load a basis and check it against a matrix");
  bimport->add_option("dir", b_dir, "basis directory")->required();
  bimport->add_option("matrix", b_matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  auto* binspect = basis->add_subcommand("inspect", "Print a basis summary");
  binspect->add_option("dir", b_dir, "basis directory")->required();
  binspect->add_option("--matrix", b_matrix, "also report the recurrence residual against this matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*solve) return cmd_solve(sa, solve_cfg.resolve());
    if (*experiment) return cmd_experiment(exp_id, exp_seed, exp_sets, exp_config, exp_output);
    if (*bexport) {
      const ConfigMap c = export_cfg.resolve();
      CsrOperator a(read_matrix_market(b_matrix));
      const Vector b = load_rhs(b_rhs, a.dimension(), static_cast<std::uint64_t>(integer(c, "seed")));
      auto r = gmres_dr_solve(a, b, GmresDrConfig{integer(c, "m"), integer(c, "k"), number(c, "rtol"),
                                                  integer(c, "max_matvecs")});
      export_basis(b_dir, r.basis, a.matrix());
      print_summary(r.report);
      std::printf("basis with k = %lld written to %s\n", static_cast<long long>(r.basis.k()), b_dir.c_str());
      return r.report.converged ? kConverged : kNotConverged;
    }
    if (*bimport) {
      const DeflationBasis basis = import_basis(b_dir, read_matrix_market(b_matrix));
      std::printf("basis ok: n = %lld, k = %lld\n", static_cast<long long>(basis.v.rows()),
                  static_cast<long long>(basis.k()));
      return kConverged;
    }
    if (*binspect) return cmd_basis_inspect(b_dir, b_matrix);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kInputError;
}
