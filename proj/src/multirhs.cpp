#include "defl/multirhs.hpp"

#include <algorithm>

namespace defl {

MultiRhsSession::MultiRhsSession(const LinearOperator& a, DeflationBasis basis)
    : a_(a), basis_(std::move(basis)) {
  if (!basis_.empty() && basis_.dimension() != a.dimension())
    throw Error("session: basis dimension does not match operator");
}

void MultiRhsSession::add_solution(PriorSolution s, SolveReport report) {
  solutions_.push_back(std::move(s));
  reports_.push_back(std::move(report));
}

namespace {

struct ProjectionCost {
  ProjectionCost(SolveReport& report) : report_(report), ops_(report.ledger.vector_ops()), flops_(report.ledger.flops()) {}
  ~ProjectionCost() {
    report_.projection_vector_ops += report_.ledger.vector_ops() - ops_;
    report_.projection_flops += report_.ledger.flops() - flops_;
    ++report_.projections;
  }

 private:
  SolveReport& report_;
  Count ops_;
  Count flops_;
};

void apply_outcome(const ProjectionOutcome& p, Vector& x, Vector& r, double& norm, SolveReport& report) {
  x = p.x_new;
  r = p.r_new;
  norm = p.residual_norm_after;
  report.record(norm, Phase::projection);
  for (const auto& f : p.flags) report.flag(f);
}

SolveReport start_report(const MultiRhsSession& session, const Vector& b, const std::string& method) {
  if (b.size() != session.op().dimension()) throw Error(method + ": right-hand side length does not match operator");
  SolveReport report;
  report.method = method;
  report.ledger = CostLedger(cost_model_for(session.op(), is_real_valued(b)));
  return report;
}

// Confirms convergence and stores the solution with its explicit residual.
void finish(MultiRhsSession& session, const Vector& b, SolveResult& out, double norm, double target,
            double start) {
  Vector explicit_r;
  if (norm <= target) {
    out.report.converged =
        detail::confirm_residual(session.op(), b, out.x, norm, target, start, out.report, &explicit_r);
  } else {
    Vector ax;
    session.op().apply(out.x, ax);
    ++out.report.verification_matvecs;
    explicit_r = b - ax;
    out.report.true_norms = {explicit_r.norm()};
  }
  out.report.final_norms = {norm};
  session.add_solution({out.x, b, explicit_r}, out.report);
}

}  // namespace

SolveResult gmres_proj_solve(MultiRhsSession& session, const Vector& b, const GmresProjConfig& config) {
  config.schedule.validate();
  if (config.m < 1) throw Error("gmres-proj: m must be >= 1");
  if (!(config.rtol > 0.0 && config.rtol < 1.0)) throw Error("gmres-proj: rtol must lie in (0, 1)");
  const Index k = config.k < 0 ? session.basis().k() : config.k;
  if (k > session.basis().k()) throw Error("gmres-proj: k exceeds the deflation basis");
  const DeflationBasis basis = session.basis().truncated(k);

  SolveResult out;
  out.report = start_report(session, b,
                            "GMRES(" + std::to_string(config.m) + ")-Proj(" + std::to_string(k) + ")");
  SolveReport& report = out.report;
  VectorOps ops(report.ledger);
  const LinearOperator& a = session.op();
  const Index n = a.dimension();

  out.x = Vector::Zero(n);
  Vector r = b;
  double norm = ops.norm(r);
  const double start = norm;
  const double target = config.rtol * start;
  report.initial_norms = {start};
  report.record(norm, Phase::gmres);

  if (config.related_rhs && !session.solutions().empty() && norm > target) {
    ProjectionCost cost(report);
    const auto p = config.joint_solution_projection
                       ? project_over_solutions_joint(session.solutions(), out.x, r, ops)
                       : project_over_solutions(session.solutions(), out.x, r, ops);
    apply_outcome(p, out.x, r, norm, report);
  }

  CycleLimits limits{RealVector::Constant(1, target), config.max_matvecs};
  for (Index cycle = 1; norm > target && report.matvecs() < config.max_matvecs; ++cycle) {
    if (!basis.empty() && config.schedule.before_cycle(cycle)) {
      ProjectionCost cost(report);
      apply_outcome(minres_project(basis, out.x, r, ops, norm), out.x, r, norm, report);
      if (norm <= target) break;
    }
    Matrix x = out.x;
    Matrix rm = r;
    Matrix q = r / norm;
    auto cyc = minres_cycle(a, ArnoldiFactorization::from_start(q, config.m + 1), Matrix::Constant(1, 1, norm),
                            config.m, limits, x, rm, report);
    ++report.cycles;
    out.x = x.col(0);
    r = rm.col(0);
    norm = cyc.residual_norms(0);
    if (cyc.breakdown && !cyc.converged) {
      report.flag("breakdown");
      break;
    }
    if (cyc.budget_exhausted) break;
  }
  if (norm > target) report.flag("budget_exhausted");
  finish(session, b, out, norm, target, start);
  return out;
}

SolveResult bicgstab_proj_solve(MultiRhsSession& session, const Vector& b, Index k, double rtol,
                                Count max_matvecs, std::vector<Count> restart_points) {
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("bicgstab-proj: rtol must lie in (0, 1)");
  if (k < 0 || k > session.basis().k()) throw Error("bicgstab-proj: k exceeds the deflation basis");
  const DeflationBasis basis = session.basis().truncated(k);
  std::sort(restart_points.begin(), restart_points.end());

  SolveResult out;
  out.report = start_report(session, b, "BiCGStab-Proj(" + std::to_string(k) + ")");
  SolveReport& report = out.report;
  VectorOps ops(report.ledger);
  const LinearOperator& a = session.op();

  out.x = Vector::Zero(a.dimension());
  Vector r = b;
  double norm = ops.norm(r);
  const double start = norm;
  const double target = rtol * start;
  report.initial_norms = {start};
  report.record(norm, Phase::bicgstab);

  std::size_t next = 0;
  while (norm > target) {
    if (!basis.empty()) {
      ProjectionCost cost(report);
      apply_outcome(minres_project(basis, out.x, r, ops, norm), out.x, r, norm, report);
      if (norm <= target) break;
    }
    while (next < restart_points.size() && restart_points[next] <= report.matvecs()) ++next;
    const Count stop_at = next < restart_points.size() ? restart_points[next] : max_matvecs;
    const auto stop = detail::bicgstab_run(a, out.x, r, norm, target, stop_at, max_matvecs, report);
    ++report.cycles;
    if (stop != detail::BicgstabStop::stopped) {
      if (stop == detail::BicgstabStop::budget) report.flag("budget_exhausted");
      break;
    }
  }
  finish(session, b, out, norm, target, start);
  return out;
}

SolveResult bicgstab_lr_solve(MultiRhsSession& session, const Vector& b, double rtol, Count max_matvecs) {
  if (!session.left_right()) throw Error("bicgstab-lr: session has no left-right basis");
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("bicgstab-lr: rtol must lie in (0, 1)");
  const LeftRightBasis& lr = *session.left_right();

  SolveResult out;
  out.report = start_report(session, b, "BiCGStab-LR(" + std::to_string(lr.k()) + ")");
  SolveReport& report = out.report;
  VectorOps ops(report.ledger);
  const LinearOperator& a = session.op();

  out.x = Vector::Zero(a.dimension());
  Vector r = b;
  double norm = ops.norm(r);
  const double start = norm;
  const double target = rtol * start;
  report.initial_norms = {start};
  report.record(norm, Phase::bicgstab);
  {
    ProjectionCost cost(report);
    apply_outcome(lr_project(lr, out.x, r, ops), out.x, r, norm, report);
  }
  if (norm > target) {
    const auto stop = detail::bicgstab_run(a, out.x, r, norm, target, max_matvecs, max_matvecs, report);
    ++report.cycles;
    if (stop == detail::BicgstabStop::budget) report.flag("budget_exhausted");
  }
  finish(session, b, out, norm, target, start);
  return out;
}

}  // namespace defl
