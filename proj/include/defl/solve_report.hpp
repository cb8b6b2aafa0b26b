#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "defl/cost_ledger.hpp"

namespace defl {

enum class Phase { projection, gmres, bicgstab };

const char* to_string(Phase p);

struct HistoryEntry {
  Count matvec;          ///< solver matvecs consumed when the norm was observed
  double residual_norm;  ///< absolute 2-norm
  Phase phase;
  Index column = 0;      ///< right-hand side within a block solve
};

/// Outcome and cost of one solve (one right-hand side or one block group).
struct SolveReport {
  std::string method;
  bool converged = false;
  CostLedger ledger;
  Count projection_vector_ops = 0;
  Count projection_flops = 0;
  /// Explicit b - A x evaluations done after the solve; not in ledger.
  Count verification_matvecs = 0;
  Count cycles = 0;
  Count projections = 0;
  std::vector<double> initial_norms;
  std::vector<double> final_norms;  ///< recurrence norms
  std::vector<double> true_norms;   ///< explicit norms, empty when not evaluated
  std::vector<HistoryEntry> history;
  std::vector<std::string> flags;

  Count matvecs() const { return ledger.matvecs(); }
  void record(double norm, Phase phase, Index column = 0) {
    history.push_back({ledger.matvecs(), norm, phase, column});
  }
  void flag(const std::string& what);
  bool has_flag(const std::string& what) const;
  /// Largest final/initial ratio across columns.
  double relative_residual() const;
};

/// columns: matvec_index,residual_norm,phase (plus column for block reports)
void write_history_csv(std::ostream& out, const SolveReport& report, bool with_column = false);
nlohmann::json report_to_json(const SolveReport& report, bool with_history = false);

}  // namespace defl
