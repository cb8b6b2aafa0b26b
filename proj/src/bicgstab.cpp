#include "defl/bicgstab.hpp"

namespace defl {

namespace detail {

BicgstabStop bicgstab_run(const LinearOperator& a, Vector& x, Vector& r, double& norm, double target,
                          Count stop_at, Count max_matvecs, SolveReport& report) {
  VectorOps ops(report.ledger);
  const Index n = r.size();
  const Vector r_hat = r;
  const double r_hat_norm = norm;
  Vector p = Vector::Zero(n);
  Vector v = Vector::Zero(n);
  Vector s(n), t(n);
  Scalar rho_old(1.0), alpha(1.0), omega(1.0);
  bool first = true;

  while (norm > target) {
    if (report.matvecs() >= stop_at) return BicgstabStop::stopped;
    if (report.matvecs() + 2 > max_matvecs) return BicgstabStop::budget;
    const Scalar rho = ops.dot(r_hat, r);
    if (std::abs(rho) < 1e-30 * r_hat_norm * norm) {
      report.flag("bicgstab_breakdown_rho");
      return BicgstabStop::breakdown;
    }
    if (first) {
      p = r;
      first = false;
    } else {
      const Scalar beta = (rho / rho_old) * (alpha / omega);
      ops.axpy(-omega, v, p);  // p = r + beta (p - omega v)
      ops.scale(p, beta);
      ops.axpy(1.0, r, p);
    }
    ops.apply(a, p, v);
    const Scalar rv = ops.dot(r_hat, v);
    if (std::abs(rv) < 1e-30 * std::abs(rho)) {
      report.flag("bicgstab_breakdown_rho");
      return BicgstabStop::breakdown;
    }
    alpha = rho / rv;
    s = r;
    ops.axpy(-alpha, v, s);
    const double s_norm = ops.norm(s);
    report.record(s_norm, Phase::bicgstab);
    if (s_norm <= target) {
      ops.axpy(alpha, p, x);
      r = s;
      norm = s_norm;
      return BicgstabStop::converged;
    }
    ops.apply(a, s, t);
    const double tt = std::pow(ops.norm(t), 2);
    const Scalar ts = ops.dot(t, s);
    if (tt == 0.0 || std::abs(ts) < 1e-30 * std::sqrt(tt) * s_norm) {
      ops.axpy(alpha, p, x);
      r = s;
      norm = s_norm;
      report.record(norm, Phase::bicgstab);
      report.flag("bicgstab_breakdown_omega");
      return BicgstabStop::breakdown;
    }
    omega = ts / tt;
    ops.axpy(alpha, p, x);
    ops.axpy(omega, s, x);
    r = s;
    ops.axpy(-omega, t, r);
    norm = ops.norm(r);
    report.record(norm, Phase::bicgstab);
    rho_old = rho;
  }
  return BicgstabStop::converged;
}

}  // namespace detail

SolveResult bicgstab_solve(const LinearOperator& a, const Vector& x0, const Vector& b, double rtol,
                           Count max_matvecs) {
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("bicgstab: rtol must lie in (0, 1)");
  SolveResult out;
  SolveReport& report = out.report;
  report.method = "BiCGStab";
  report.ledger = CostLedger(cost_model_for(a, is_real_valued(b) && is_real_valued(x0)));
  VectorOps ops(report.ledger);
  out.x = x0;
  Vector r = b;
  if (x0.squaredNorm() != 0.0) {
    Vector ax;
    ops.apply(a, x0, ax);
    r -= ax;
  }
  double norm = ops.norm(r);
  const double target = rtol * norm;
  report.initial_norms = {norm};
  report.record(norm, Phase::bicgstab);
  if (norm == 0.0) {
    report.converged = true;
    report.final_norms = {0.0};
    return out;
  }
  const auto stop = detail::bicgstab_run(a, out.x, r, norm, target, max_matvecs, max_matvecs, report);
  report.cycles = 1;
  if (stop == detail::BicgstabStop::converged || norm <= target) {
    report.converged = detail::confirm_residual(a, b, out.x, norm, target, report.initial_norms[0], report);
  } else if (stop != detail::BicgstabStop::breakdown) {
    report.flag("budget_exhausted");
  }
  report.final_norms = {norm};
  return out;
}

}  // namespace defl
