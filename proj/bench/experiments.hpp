#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "defl/block_gmres.hpp"
#include "defl/multirhs.hpp"

namespace defl::bench {

/// Seed base for the bidiagonal experiments: right-hand side i (1-based)
/// is make_rhs(RandomNormal, seed + i - 1). Picked as the most typical
/// member of a 20-seed scan; see README.
inline constexpr std::uint64_t kDefaultSeed = 361;

/// A labelled solve inside an experiment.
struct LabelledReport {
  std::string label;
  SolveReport report;
};

/// Everything an experiment produced. Aggregates are sums over `solves`.
struct RunReport {
  std::string experiment;
  nlohmann::json spec;
  std::vector<LabelledReport> solves;

  Count total_matvecs() const;
  Count total_flops() const;
  Count total_matvecs(const std::string& label_prefix) const;
  nlohmann::json to_json(bool with_history = false) const;
};

/// Experiment id plus overrides, as parsed from flags or a config file.
struct ExperimentSpec {
  std::string id;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, std::string> overrides;
  std::string output_dir;  ///< empty: no files written

  double get(const std::string& key, double fallback) const;
  Index get_index(const std::string& key, Index fallback) const;
  nlohmann::json to_json() const;
};

struct Curve {
  std::string name;
  std::vector<HistoryEntry> points;
};

// --- bidiagonal experiments ------------------------------------------------

struct Example1Result {
  Count gmres_dr_matvecs = 0;    ///< RHS 1, GMRES-DR(25,10)
  Count gmres25_matvecs = 0;     ///< RHS 1, plain GMRES(25)
  bool gmres25_converged = false;
  Count proj_matvecs = 0;        ///< RHS 2, GMRES(15)-Proj(10)
  Count bicgstab_matvecs = 0;    ///< RHS 2
  Count gmres15_matvecs = 0;     ///< RHS 2, GMRES(15) with a 500-matvec budget
  bool gmres15_converged = false;
  double gmres15_final_relative = 0.0;
  Vector harmonic_values;
  std::vector<Curve> curves;
  RunReport run;
};
Example1Result run_example1(const ExperimentSpec& spec);

struct TableResult {
  std::vector<Index> m_values;
  std::vector<std::string> columns;
  std::vector<ProjectionSchedule> schedules;
  std::vector<std::vector<Count>> cells;  ///< [m][schedule], totals over all RHS
  RunReport run;
};
TableResult run_table_freq(const ExperimentSpec& spec);

struct RtolStudyRow {
  double first_rtol = 0.0;
  Count first_matvecs = 0;
  Count subtotal = 0;  ///< right-hand sides 2..n
  Count total = 0;
};
struct RtolStudyResult {
  std::vector<RtolStudyRow> rows;
  RunReport run;
};
RtolStudyResult run_rtol_study(const ExperimentSpec& spec);

struct RelatedRhsResult {
  Count with_solution_projection = 0;
  Count without_solution_projection = 0;
  double first_projected_relative = 0.0;  ///< RHS 2 relative residual after the step-2 projection
  RunReport run;
};
RelatedRhsResult run_related_rhs(const ExperimentSpec& spec);

struct BicgstabResult {
  std::map<std::string, Count> matvecs;  ///< by curve name
  std::map<std::string, bool> converged;
  std::vector<Curve> curves;
  RunReport run;
};
/// Right-only projection before BiCGStab (k = 10 and k = 5).
BicgstabResult run_bicgstab_fig6(const ExperimentSpec& spec);
/// k = 5 with one restart at 100, 150 or 200 matvecs.
BicgstabResult run_bicgstab_fig7(const ExperimentSpec& spec);
/// Left-right projection, left vectors from GMRES-DR on A^T and "accurate" ones.
BicgstabResult run_bicgstab_fig8(const ExperimentSpec& spec);
/// gamma5-Hermitian matrix, 8 or 16 vectors, left vectors from gamma5 V.
struct Gamma5Result : BicgstabResult {
  Count left_construction_matvecs = -1;
  double min_eigen_ratio = 0.0;  ///< smallest |lambda| / median |lambda|, when computed
};
Gamma5Result run_bicgstab_fig9(const ExperimentSpec& spec);

struct BlockRow {
  std::string method;
  Count matvecs = 0;
  Count flops = 0;
  bool converged = false;
  std::string note;
};
struct BlockTableResult {
  std::vector<BlockRow> rows;
  RunReport run;
};
BlockTableResult run_block_table(const ExperimentSpec& spec);

/// Dispatches on spec.id, writes artifacts to spec.output_dir when set and
/// returns the run report.
RunReport run_experiment(const ExperimentSpec& spec);
std::vector<std::string> experiment_ids();

/// Bidiagonal right-hand side i (1-based) of the sequence for `seed`.
Vector bidiagonal_rhs(std::uint64_t seed, Index i, Index n = 2000);

void write_curve_csv(const std::string& path, const Curve& curve);

}  // namespace defl::bench
