#include "defl/solve_report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace defl {

const char* to_string(Phase p) {
  switch (p) {
    case Phase::projection: return "projection";
    case Phase::gmres: return "gmres";
    case Phase::bicgstab: return "bicgstab";
  }
  return "unknown";
}

void SolveReport::flag(const std::string& what) {
  if (!has_flag(what)) flags.push_back(what);
}

bool SolveReport::has_flag(const std::string& what) const {
  return std::find(flags.begin(), flags.end(), what) != flags.end();
}

double SolveReport::relative_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < final_norms.size() && i < initial_norms.size(); ++i)
    if (initial_norms[i] > 0.0) worst = std::max(worst, final_norms[i] / initial_norms[i]);
  return worst;
}

void write_history_csv(std::ostream& out, const SolveReport& report, bool with_column) {
  out << "matvec_index,residual_norm,phase" << (with_column ? ",column" : "") << '\n';
  char buf[40];
  for (const auto& h : report.history) {
    std::snprintf(buf, sizeof buf, "%.17g", h.residual_norm);
    out << h.matvec << ',' << buf << ',' << to_string(h.phase);
    if (with_column) out << ',' << h.column;
    out << '\n';
  }
}

nlohmann::json report_to_json(const SolveReport& r, bool with_history) {
  nlohmann::json j;
  j["method"] = r.method;
  j["converged"] = r.converged;
  j["matvecs"] = r.matvecs();
  j["vector_ops"] = r.ledger.vector_ops();
  j["small_dense_flops"] = r.ledger.small_dense_flops();
  j["model_flops"] = r.ledger.flops();
  j["flop_model"] = to_string(r.ledger.model().field);
  j["projection_vector_ops"] = r.projection_vector_ops;
  j["projection_flops"] = r.projection_flops;
  j["verification_matvecs"] = r.verification_matvecs;
  j["cycles"] = r.cycles;
  j["projections"] = r.projections;
  j["initial_norms"] = r.initial_norms;
  j["final_norms"] = r.final_norms;
  j["true_norms"] = r.true_norms;
  j["flags"] = r.flags;
  if (with_history) {
    auto& h = j["history"] = nlohmann::json::array();
    for (const auto& e : r.history)
      h.push_back({{"matvec", e.matvec}, {"residual_norm", e.residual_norm},
                   {"phase", to_string(e.phase)}, {"column", e.column}});
  }
  return j;
}

}  // namespace defl
