#include "experiments.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "defl/eigen_oracle.hpp"
#include "defl/generators.hpp"
#include "defl/left_basis.hpp"

namespace defl::bench {

namespace fs = std::filesystem;
using nlohmann::json;

// --- reports -----------------------------------------------------------------

Count RunReport::total_matvecs() const {
  Count total = 0;
  for (const auto& s : solves) total += s.report.matvecs();
  return total;
}

Count RunReport::total_flops() const {
  Count total = 0;
  for (const auto& s : solves) total += s.report.ledger.flops();
  return total;
}

Count RunReport::total_matvecs(const std::string& label_prefix) const {
  Count total = 0;
  for (const auto& s : solves)
    if (s.label.rfind(label_prefix, 0) == 0) total += s.report.matvecs();
  return total;
}

json RunReport::to_json(bool with_history) const {
  json solves_json = json::array();
  for (const auto& s : solves) {
    json j = report_to_json(s.report, with_history);
    j["label"] = s.label;
    solves_json.push_back(std::move(j));
  }
  return json{{"experiment", experiment},
              {"spec", spec},
              {"flop_model", "8n per complex vector op, 2n real; 8 nnz / 2 nnz per matvec"},
              {"total_matvecs", total_matvecs()},
              {"total_flops", total_flops()},
              {"solves", std::move(solves_json)}};
}

double ExperimentSpec::get(const std::string& key, double fallback) const {
  const auto it = overrides.find(key);
  if (it == overrides.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw Error("experiment option " + key + ": '" + it->second + "' is not a number");
  }
}

Index ExperimentSpec::get_index(const std::string& key, Index fallback) const {
  const double v = get(key, static_cast<double>(fallback));
  if (v != static_cast<double>(static_cast<Index>(v))) throw Error("experiment option " + key + " must be an integer");
  return static_cast<Index>(v);
}

json ExperimentSpec::to_json() const {
  json o = json::object();
  for (const auto& [k, v] : overrides) o[k] = v;
  return json{{"id", id}, {"seed", seed}, {"overrides", o}};
}

Vector bidiagonal_rhs(std::uint64_t seed, Index i, Index n) {
  return make_rhs(n, rhs::RandomNormal{}, seed + static_cast<std::uint64_t>(i) - 1);
}

void write_curve_csv(const std::string& path, const Curve& curve) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "matvec_index,residual_norm,phase\n";
  out << std::setprecision(17);
  for (const auto& p : curve.points) out << p.matvec << "," << p.residual_norm << "," << to_string(p.phase) << "\n";
}

namespace {

RunReport new_run(const ExperimentSpec& spec) {
  RunReport run;
  run.experiment = spec.id;
  run.spec = spec.to_json();
  return run;
}

Curve curve_of(const std::string& name, const SolveReport& report) {
  // Relative residual against the initial norm, as plotted.
  Curve c{name, report.history};
  const double scale = report.initial_norms.empty() || report.initial_norms[0] == 0.0 ? 1.0 : report.initial_norms[0];
  for (auto& p : c.points) p.residual_norm /= scale;
  return c;
}

GmresDrResult first_rhs(const LinearOperator& a, const Vector& b, Index m, Index k, double rtol) {
  return gmres_dr_solve(a, b, GmresDrConfig{m, k, rtol, 100000});
}

void write_run(const ExperimentSpec& spec, const RunReport& run) {
  if (spec.output_dir.empty()) return;
  fs::create_directories(spec.output_dir);
  std::ofstream out(fs::path(spec.output_dir) / "run.json");
  out << run.to_json(true).dump(2) << "\n";
}

void write_curves(const ExperimentSpec& spec, const std::vector<Curve>& curves) {
  if (spec.output_dir.empty()) return;
  const fs::path dir = fs::path(spec.output_dir) / "curves";
  fs::create_directories(dir);
  for (const auto& c : curves) write_curve_csv((dir / (c.name + ".csv")).string(), c);
}

void write_table(const ExperimentSpec& spec, const std::string& title, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  if (spec.output_dir.empty()) return;
  fs::create_directories(spec.output_dir);
  std::ofstream md(fs::path(spec.output_dir) / "table.md");
  md << "## " << title << "\n\n|";
  for (const auto& h : header) md << " " << h << " |";
  md << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) md << "---|";
  md << "\n";
  for (const auto& r : rows) {
    md << "|";
    for (const auto& c : r) md << " " << c << " |";
    md << "\n";
  }
  md << "\nCells are matrix-vector products; every number is traceable to run.json.\n";
  std::ofstream csv(fs::path(spec.output_dir) / "table.csv");
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << r[i];
    csv << "\n";
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

// --- Example 1 ---------------------------------------------------------------

Example1Result run_example1(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const Index m = spec.get_index("m", 25);
  const Index k = spec.get_index("k", 10);
  const Index m2 = spec.get_index("m_proj", 15);
  const double rtol = spec.get("rtol", 1e-6);
  CsrOperator a(make_bidiagonal(n));
  const Vector b1 = bidiagonal_rhs(spec.seed, 1, n);
  const Vector b2 = bidiagonal_rhs(spec.seed, 2, n);

  Example1Result out;
  out.run = new_run(spec);
  auto dr = first_rhs(a, b1, m, k, rtol);
  out.gmres_dr_matvecs = dr.report.matvecs();
  out.harmonic_values = dr.basis.harmonic_values;
  auto plain = gmres_restarted(a, Vector::Zero(n), b1, m, rtol, 20000);
  out.gmres25_matvecs = plain.report.matvecs();
  out.gmres25_converged = plain.report.converged;

  MultiRhsSession session(a, dr.basis);
  auto proj = gmres_proj_solve(session, b2, GmresProjConfig{m2, k, {1, 1}, rtol, 20000});
  out.proj_matvecs = proj.report.matvecs();
  auto bicg = bicgstab_solve(a, Vector::Zero(n), b2, rtol, 20000);
  out.bicgstab_matvecs = bicg.report.matvecs();
  auto g15 = gmres_restarted(a, Vector::Zero(n), b2, m2, rtol, spec.get_index("gmres_budget", 500));
  out.gmres15_matvecs = g15.report.matvecs();
  out.gmres15_converged = g15.report.converged;
  out.gmres15_final_relative = g15.report.relative_residual();

  out.curves = {curve_of("rhs1_gmres_dr", dr.report), curve_of("rhs1_gmres", plain.report),
                curve_of("rhs2_gmres_proj", proj.report), curve_of("rhs2_bicgstab", bicg.report),
                curve_of("rhs2_gmres", g15.report)};
  out.run.solves = {{"rhs1 " + dr.report.method, dr.report},
                    {"rhs1 " + plain.report.method, plain.report},
                    {"rhs2 " + proj.report.method, proj.report},
                    {"rhs2 " + bicg.report.method, bicg.report},
                    {"rhs2 " + g15.report.method, g15.report}};
  write_run(spec, out.run);
  write_curves(spec, out.curves);
  write_table(spec, "Example 1", {"solve", "matvecs", "converged"},
              {{"RHS 1 " + dr.report.method, std::to_string(out.gmres_dr_matvecs), dr.report.converged ? "yes" : "no"},
               {"RHS 1 " + plain.report.method, std::to_string(out.gmres25_matvecs), out.gmres25_converged ? "yes" : "no"},
               {"RHS 2 " + proj.report.method, std::to_string(out.proj_matvecs), proj.report.converged ? "yes" : "no"},
               {"RHS 2 BiCGStab", std::to_string(out.bicgstab_matvecs), bicg.report.converged ? "yes" : "no"},
               {"RHS 2 " + g15.report.method, std::to_string(out.gmres15_matvecs), out.gmres15_converged ? "yes" : "no"}});
  return out;
}

// --- projection frequency table -------------------------------------------------

TableResult run_table_freq(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const Index n_rhs = spec.get_index("rhs", 10);
  const double rtol = spec.get("rtol", 1e-6);
  const Index k = spec.get_index("k", 10);
  CsrOperator a(make_bidiagonal(n));

  TableResult out;
  out.run = new_run(spec);
  out.m_values = {5, 10, 15, 20, 25};
  if (spec.overrides.count("m")) out.m_values = {spec.get_index("m", 15)};
  out.columns = {"project every cycle", "project every 5th", "project every 10th", "project at 10, 20, ..."};
  out.schedules = {{1, 1}, {5, 1}, {10, 1}, {10, 0}};
  if (spec.overrides.count("f")) {
    out.schedules = {{spec.get_index("f", 1), spec.get_index("phase", 1)}};
    out.columns = {"f=" + std::to_string(out.schedules[0].frequency) + " phase=" +
                   std::to_string(out.schedules[0].phase)};
  }

  auto dr = first_rhs(a, bidiagonal_rhs(spec.seed, 1, n), 25, k, rtol);
  out.run.solves.push_back({"rhs1 " + dr.report.method, dr.report});
  std::vector<Vector> rhs;
  for (Index i = 2; i <= n_rhs; ++i) rhs.push_back(bidiagonal_rhs(spec.seed, i, n));

  for (const Index m : out.m_values) {
    out.cells.emplace_back();
    for (std::size_t c = 0; c < out.schedules.size(); ++c) {
      MultiRhsSession session(a, dr.basis);
      Count total = dr.report.matvecs();
      for (std::size_t i = 0; i < rhs.size(); ++i) {
        auto res = gmres_proj_solve(session, rhs[i], GmresProjConfig{m, k, out.schedules[c], rtol, 100000});
        total += res.report.matvecs();
        out.run.solves.push_back({"m=" + std::to_string(m) + " " + out.columns[c] + " rhs" + std::to_string(i + 2),
                                  std::move(res.report)});
      }
      out.cells.back().push_back(total);
    }
  }

  std::vector<std::string> header{"m"};
  header.insert(header.end(), out.columns.begin(), out.columns.end());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < out.m_values.size(); ++r) {
    rows.push_back({std::to_string(out.m_values[r])});
    for (const Count c : out.cells[r]) rows.back().push_back(std::to_string(c));
  }
  write_run(spec, out.run);
  write_table(spec, "Changing m and the frequency of projection (" + std::to_string(n_rhs) + " right-hand sides)",
              header, rows);
  return out;
}

// --- first right-hand side accuracy ----------------------------------------------

RtolStudyResult run_rtol_study(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const Index n_rhs = spec.get_index("rhs", 10);
  const Index m = spec.get_index("m", 15);
  const Index k = spec.get_index("k", 10);
  const double rtol = spec.get("rtol", 1e-6);
  CsrOperator a(make_bidiagonal(n));

  RtolStudyResult out;
  out.run = new_run(spec);
  const Vector b1 = bidiagonal_rhs(spec.seed, 1, n);
  for (const double first : {1e-6, 1e-8, 1e-10}) {
    RtolStudyRow row;
    row.first_rtol = first;
    auto dr = first_rhs(a, b1, 25, k, first);
    row.first_matvecs = dr.report.matvecs();
    out.run.solves.push_back({"first_rtol=" + fmt(first) + " rhs1", dr.report});
    MultiRhsSession session(a, dr.basis);
    for (Index i = 2; i <= n_rhs; ++i) {
      auto res = gmres_proj_solve(session, bidiagonal_rhs(spec.seed, i, n), GmresProjConfig{m, k, {1, 1}, rtol, 100000});
      row.subtotal += res.report.matvecs();
      out.run.solves.push_back({"first_rtol=" + fmt(first) + " rhs" + std::to_string(i), std::move(res.report)});
    }
    row.total = row.first_matvecs + row.subtotal;
    out.rows.push_back(row);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : out.rows)
    rows.push_back({fmt(r.first_rtol), std::to_string(r.first_matvecs), std::to_string(r.subtotal), std::to_string(r.total)});
  write_run(spec, out.run);
  write_table(spec, "Solving the first right-hand side to greater accuracy",
              {"first rtol", "RHS 1", "RHS 2.." + std::to_string(n_rhs), "total"}, rows);
  return out;
}

// --- related right-hand sides ----------------------------------------------------

RelatedRhsResult run_related_rhs(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const Index n_rhs = spec.get_index("rhs", 10);
  const Index m = spec.get_index("m", 15);
  const Index k = spec.get_index("k", 10);
  const Index f = spec.get_index("f", 5);
  const double eps = spec.get("epsilon", 1e-4);
  const double rtol = spec.get("rtol", 1e-6);
  CsrOperator a(make_bidiagonal(n));

  RelatedRhsResult out;
  out.run = new_run(spec);
  const Vector b1 = bidiagonal_rhs(spec.seed, 1, n);
  std::vector<Vector> rhs;
  for (Index i = 2; i <= n_rhs; ++i)
    rhs.push_back(make_rhs(n, rhs::Related{b1, eps}, spec.seed + static_cast<std::uint64_t>(i) - 1));

  auto dr = first_rhs(a, b1, 25, k, rtol);
  Vector ax;
  a.apply(dr.x, ax);
  const PriorSolution first{dr.x, b1, b1 - ax};

  for (const bool step2 : {true, false}) {
    MultiRhsSession session(a, dr.basis);
    session.add_solution(first, dr.report);
    const std::string tag = step2 ? "with solution projection" : "without solution projection";
    out.run.solves.push_back({tag + " rhs1", dr.report});
    Count total = dr.report.matvecs();
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      GmresProjConfig cfg{m, k, {f, 1}, rtol, 100000};
      cfg.related_rhs = step2;
      cfg.joint_solution_projection = spec.get_index("joint", 0) != 0;
      auto res = gmres_proj_solve(session, rhs[i], cfg);
      if (step2 && i == 0) {
        for (const auto& h : res.report.history)
          if (h.phase == Phase::projection) {
            out.first_projected_relative = h.residual_norm / res.report.initial_norms[0];
            break;
          }
      }
      total += res.report.matvecs();
      out.run.solves.push_back({tag + " rhs" + std::to_string(i + 2), std::move(res.report)});
    }
    (step2 ? out.with_solution_projection : out.without_solution_projection) = total;
  }
  write_run(spec, out.run);
  write_table(spec, "Related right-hand sides (" + std::to_string(n_rhs) + " systems)",
              {"method", "matvecs"},
              {{"GMRES-DR + GMRES-Proj, projecting over earlier solutions", std::to_string(out.with_solution_projection)},
               {"GMRES-DR + GMRES-Proj", std::to_string(out.without_solution_projection)}});
  return out;
}

// --- deflated BiCGStab -------------------------------------------------------------

namespace {

void add_solve(BicgstabResult& out, const std::string& name, const SolveResult& res) {
  out.matvecs[name] = res.report.matvecs();
  out.converged[name] = res.report.converged;
  out.curves.push_back(curve_of(name, res.report));
  out.run.solves.push_back({name, res.report});
}

void finish_bicgstab(const ExperimentSpec& spec, BicgstabResult& out, const std::string& title) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : out.curves)
    rows.push_back({c.name, std::to_string(out.matvecs[c.name]), out.converged[c.name] ? "yes" : "no"});
  write_run(spec, out.run);
  write_curves(spec, out.curves);
  write_table(spec, title, {"curve", "matvecs", "converged"}, rows);
}

struct BidiagonalBases {
  GmresDrResult k10;
  GmresDrResult k5;
};

BidiagonalBases bidiagonal_bases(const LinearOperator& a, const Vector& b1, double first_rtol) {
  return {first_rhs(a, b1, 25, 10, first_rtol), first_rhs(a, b1, 25, 5, first_rtol)};
}

}  // namespace

BicgstabResult run_bicgstab_fig6(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const double rtol = spec.get("rtol", 1e-6);
  const Count budget = spec.get_index("budget", 4000);
  CsrOperator a(make_bidiagonal(n));
  const Vector b2 = bidiagonal_rhs(spec.seed, 2, n);
  auto bases = bidiagonal_bases(a, bidiagonal_rhs(spec.seed, 1, n), spec.get("first_rtol", 1e-8));

  BicgstabResult out;
  out.run = new_run(spec);
  add_solve(out, "bicgstab", bicgstab_solve(a, Vector::Zero(n), b2, rtol, budget));
  MultiRhsSession s10(a, bases.k10.basis);
  add_solve(out, "right_k10", bicgstab_proj_solve(s10, b2, 10, rtol, budget));
  MultiRhsSession s5(a, bases.k5.basis);
  add_solve(out, "right_k5", bicgstab_proj_solve(s5, b2, 5, rtol, budget));
  finish_bicgstab(spec, out, "BiCGStab with right-only deflation");
  return out;
}

BicgstabResult run_bicgstab_fig7(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const double rtol = spec.get("rtol", 1e-6);
  const Count budget = spec.get_index("budget", 4000);
  CsrOperator a(make_bidiagonal(n));
  const Vector b2 = bidiagonal_rhs(spec.seed, 2, n);
  auto dr = first_rhs(a, bidiagonal_rhs(spec.seed, 1, n), 25, 5, spec.get("first_rtol", 1e-8));

  BicgstabResult out;
  out.run = new_run(spec);
  MultiRhsSession session(a, dr.basis);
  add_solve(out, "right_k5", bicgstab_proj_solve(session, b2, 5, rtol, budget));
  for (const Count at : {100, 150, 200})
    add_solve(out, "right_k5_restart_" + std::to_string(at), bicgstab_proj_solve(session, b2, 5, rtol, budget, {at}));
  finish_bicgstab(spec, out, "Deflated BiCGStab restarted once");
  return out;
}

BicgstabResult run_bicgstab_fig8(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const double rtol = spec.get("rtol", 1e-6);
  const double first_rtol = spec.get("first_rtol", 1e-8);
  const Count budget = spec.get_index("budget", 4000);
  CsrOperator a(make_bidiagonal(n));
  const Vector b2 = bidiagonal_rhs(spec.seed, 2, n);
  auto bases = bidiagonal_bases(a, bidiagonal_rhs(spec.seed, 1, n), first_rtol);

  BicgstabResult out;
  out.run = new_run(spec);
  add_solve(out, "bicgstab", bicgstab_solve(a, Vector::Zero(n), b2, rtol, budget));
  const std::uint64_t left_seed = spec.seed + 1000;
  const auto accurate = compute_left_basis(a, LeftBasisConfig{40, 20, 20, 20, 1e-8, left_seed});
  out.run.solves.push_back({"left vectors, accurate", accurate.report});
  for (const Index k : {10, 5}) {
    const GmresDrResult& right = k == 10 ? bases.k10 : bases.k5;
    const std::string tag = "k" + std::to_string(k);
    MultiRhsSession session(a, right.basis);
    add_solve(out, "right_" + tag, bicgstab_proj_solve(session, b2, k, rtol, budget));

    const auto era = compute_left_basis(a, LeftBasisConfig{25, k, k, 0, first_rtol, left_seed});
    out.run.solves.push_back({"left vectors, GMRES-DR(25," + std::to_string(k) + ") on A^T", era.report});
    CostLedger scratch;
    VectorOps setup(scratch);
    session.set_left_right(LeftRightBasis::from_deflation(right.basis, era.w.leftCols(k), setup));
    add_solve(out, "left_right_" + tag, bicgstab_lr_solve(session, b2, rtol, budget));
    session.set_left_right(LeftRightBasis::from_deflation(right.basis, accurate.w.leftCols(k), setup));
    add_solve(out, "left_right_" + tag + "_accurate_left", bicgstab_lr_solve(session, b2, rtol, budget));
  }
  finish_bicgstab(spec, out, "BiCGStab with left-right deflation");
  return out;
}

Gamma5Result run_bicgstab_fig9(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", Gamma5Defaults::n);
  const double rtol = spec.get("rtol", 1e-6);
  const Count budget = spec.get_index("budget", 20000);
  const Index k = spec.get_index("k", 16);
  const Index m = spec.get_index("m", 40);
  const auto g5 = make_gamma5_matrix(n, spec.get_index("bandwidth", Gamma5Defaults::bandwidth),
                                     spec.get("shift", Gamma5Defaults::shift),
                                     static_cast<std::uint64_t>(spec.get_index("matrix_seed", Gamma5Defaults::seed)));
  CsrOperator a(g5.matrix);
  const Vector b1 = make_rhs(n, rhs::RandomNormal{}, spec.seed);
  const Vector b2 = make_rhs(n, rhs::RandomNormal{}, spec.seed + 1);

  Gamma5Result out;
  out.run = new_run(spec);
  auto dr = first_rhs(a, b1, m, k, spec.get("first_rtol", 1e-8));
  out.run.solves.push_back({"rhs1 " + dr.report.method, dr.report});
  add_solve(out, "bicgstab", bicgstab_solve(a, Vector::Zero(n), b2, rtol, budget));

  MultiRhsSession session(a, dr.basis);
  add_solve(out, "right_k" + std::to_string(k), bicgstab_proj_solve(session, b2, k, rtol, budget));
  CostLedger scratch;
  VectorOps setup(scratch);
  for (const Index kk : {k / 2, k}) {
    const DeflationBasis right = dr.basis.truncated(kk);
    const Count before = a.applications();
    const Matrix w = gamma5_left_basis(g5.gamma5, right.v.leftCols(kk));
    session.set_left_right(LeftRightBasis::from_deflation(right, w, setup));
    if (kk == k) out.left_construction_matvecs = a.applications() - before;
    add_solve(out, "left_right_k" + std::to_string(kk), bicgstab_lr_solve(session, b2, rtol, budget));
  }
  if (spec.get_index("check_spectrum", 0) != 0) {
    const auto oracle = EigenOracle::compute(g5.matrix.to_dense(), 1e14);
    std::vector<double> mags;
    for (Index i = 0; i < oracle.size(); ++i) mags.push_back(std::abs(oracle.lambda(i)));
    std::sort(mags.begin(), mags.end());
    out.min_eigen_ratio = mags.front() / mags[mags.size() / 2];
  }
  finish_bicgstab(spec, out, "Deflated BiCGStab on a gamma5-Hermitian matrix");
  return out;
}

// --- block methods -----------------------------------------------------------------

BlockTableResult run_block_table(const ExperimentSpec& spec) {
  const Index n = spec.get_index("n", 2000);
  const Index n_rhs = spec.get_index("rhs", 40);
  const double rtol = spec.get("rtol", 1e-6);
  const Count first_budget = spec.get_index("block_budget", 10000);
  CsrOperator a(make_bidiagonal(n));
  Matrix b(n, n_rhs);
  for (Index i = 0; i < n_rhs; ++i) b.col(i) = bidiagonal_rhs(spec.seed, i + 1, n);

  BlockTableResult out;
  out.run = new_run(spec);
  {
    BlockRow row{"GMRES-DR(25,10) + GMRES(15)-Proj(10)", 0, 0, true, ""};
    auto dr = first_rhs(a, b.col(0), 25, 10, rtol);
    row.converged = dr.report.converged;
    out.run.solves.push_back({row.method + " rhs1", dr.report});
    MultiRhsSession session(a, dr.basis);
    for (Index i = 1; i < n_rhs; ++i) {
      auto res = gmres_proj_solve(session, b.col(i), GmresProjConfig{15, 10, {1, 1}, rtol, 100000});
      row.converged = row.converged && res.report.converged;
      out.run.solves.push_back({row.method + " rhs" + std::to_string(i + 1), std::move(res.report)});
    }
    row.matvecs = out.run.total_matvecs(row.method);
    for (const auto& s : out.run.solves) row.flops += s.report.ledger.flops();
    out.rows.push_back(row);
  }
  struct Config {
    Index m, p, k, m_proj;
  };
  std::vector<Config> configs{{170, 20, 10, 160}, {170, 10, 10, 160}, {170, 5, 10, 160}, {60, 5, 10, 50}};
  if (spec.overrides.count("p"))
    configs = {{spec.get_index("m", 170), spec.get_index("p", 5), spec.get_index("k", 10), spec.get_index("m_proj", 160)}};
  for (const auto& c : configs) {
    const std::string method = "Bl-G-DR(" + std::to_string(c.m) + "," + std::to_string(c.p) + "," + std::to_string(c.k) +
                               ") + Bl-G(" + std::to_string(c.m_proj) + "," + std::to_string(c.p) + ")-Proj(" +
                               std::to_string(c.k) + ")";
    BlockRow row{method, 0, 0, false, ""};
    BlockGroupConfig cfg{BlockDrConfig{c.m, c.p, c.k, rtol, first_budget}, c.m_proj, 100000};
    const auto run = solve_in_groups(a, b, cfg);
    Count flops = 0;
    for (std::size_t g = 0; g < run.groups.size(); ++g) {
      flops += run.groups[g].report.ledger.flops();
      out.run.solves.push_back({method + " group" + std::to_string(g + 1), run.groups[g].report});
    }
    row.matvecs = run.total_matvecs;
    row.flops = flops;
    row.converged = run.all_converged && static_cast<Index>(run.groups.size()) * c.p >= n_rhs;
    if (!row.converged)
      row.note = "first group did not converge within " + std::to_string(first_budget) + " matvecs";
    out.rows.push_back(row);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : out.rows)
    rows.push_back({r.method, r.converged ? std::to_string(r.matvecs) : "-",
                    r.converged ? fmt(static_cast<double>(r.flops) / 1e6) : "-", r.note});
  write_run(spec, out.run);
  write_table(spec, "Block GMRES-Proj for " + std::to_string(n_rhs) + " right-hand sides",
              {"method", "matvecs", "Mflops (model)", "note"}, rows);
  return out;
}

std::vector<std::string> experiment_ids() {
  return {"example1", "table_freq", "rtol_study", "related_rhs", "bicgstab_fig6",
          "bicgstab_fig7", "bicgstab_fig8", "bicgstab_fig9", "block_table"};
}

RunReport run_experiment(const ExperimentSpec& spec) {
  if (spec.id == "example1") return run_example1(spec).run;
  if (spec.id == "table_freq") return run_table_freq(spec).run;
  if (spec.id == "rtol_study") return run_rtol_study(spec).run;
  if (spec.id == "related_rhs") return run_related_rhs(spec).run;
  if (spec.id == "bicgstab_fig6") return run_bicgstab_fig6(spec).run;
  if (spec.id == "bicgstab_fig7") return run_bicgstab_fig7(spec).run;
  if (spec.id == "bicgstab_fig8") return run_bicgstab_fig8(spec).run;
  if (spec.id == "bicgstab_fig9") return run_bicgstab_fig9(spec).run;
  if (spec.id == "block_table") return run_block_table(spec).run;
  throw Error("unknown experiment '" + spec.id + "'");
}

}  // namespace defl::bench
