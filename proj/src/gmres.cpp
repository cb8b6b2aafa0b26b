#include "defl/gmres.hpp"

#include "defl/givens_least_squares.hpp"

namespace defl {

namespace {

Count rotation_flops(const CostModel& m, Index applications) { return 3 * m.per_entry() * applications; }

}  // namespace

CycleResult minres_cycle(const LinearOperator& a, ArnoldiFactorization fact, const Matrix& coords,
                         Index max_cols, const CycleLimits& limits, Matrix& x, Matrix& r,
                         SolveReport& report) {
  if (coords.rows() != fact.rows()) throw Error("minres_cycle: coordinates do not match basis");
  VectorOps ops(report.ledger);
  const CostModel& model = report.ledger.model();
  const Index s = coords.cols();

  CycleResult out;

  GivensLeastSquares ls(coords);
  for (Index j = 0; j < fact.cols(); ++j) {
    const Index generated = ls.add_column(fact.hbar().col(j));
    report.ledger.record_small_dense(rotation_flops(model, generated * (s + 1) + fact.rows()));
  }

  while (fact.cols() < max_cols) {
    if (fact.frontier() == 0) {
      out.breakdown = true;
      break;
    }
    if (fact.cols() + fact.frontier() > max_cols) break;
    if (report.matvecs() + fact.frontier() > limits.max_matvecs) {
      out.budget_exhausted = true;
      break;
    }
    const Index old_rows = fact.rows();
    const Index old_cols = fact.cols();
    const auto ext = fact.extend(a, ops);
    out.matvecs += ext.matvecs;
    if (ext.dropped > 0 && !fact.invariant()) report.flag("block_column_deflated");
    ls.add_rows(fact.rows() - old_rows);
    for (Index j = old_cols; j < fact.cols(); ++j) {
      const Index generated = ls.add_column(fact.hbar().col(j));
      report.ledger.record_small_dense(rotation_flops(model, generated * (s + 1) + fact.rows()));
    }
    const RealVector norms = ls.residual_norms();
    for (Index c = 0; c < s; ++c) report.record(norms(c), Phase::gmres, c);
    if ((norms.array() <= limits.target_norms.array()).all()) {
      out.converged = true;
      break;
    }
    if (fact.frontier() == 0) {
      out.breakdown = true;
      break;
    }
  }

  out.solution = ls.solve();
  report.ledger.record_small_dense(model.small_product(ls.cols(), ls.cols(), s) / 2);
  out.coords = Matrix::Zero(fact.rows(), s);
  out.coords.topRows(coords.rows()) = coords;
  out.residual_coords = out.coords - fact.hbar() * out.solution;
  report.ledger.record_small_dense(model.small_product(fact.rows(), fact.cols(), s));
  out.residual_norms = out.residual_coords.colwise().norm().transpose();

  if (fact.cols() > 0) ops.combine_add(fact.basis().leftCols(fact.cols()), out.solution, x);
  r = ops.combine(fact.basis(), out.residual_coords);
  if (out.breakdown && (out.residual_norms.array() <= limits.target_norms.array()).all())
    out.converged = true;
  out.fact = std::move(fact);
  return out;
}

GmresCycleResult gmres_cycle(const LinearOperator& a, const Vector& x0, const Vector& b, Index m) {
  if (m < 1) throw Error("gmres_cycle: m must be >= 1");
  SolveReport report;
  report.ledger = CostLedger(cost_model_for(a, is_real_valued(b) && is_real_valued(x0)));
  VectorOps ops(report.ledger);
  Vector r0 = b;
  if (x0.squaredNorm() != 0.0) {
    Vector ax;
    ops.apply(a, x0, ax);
    r0 -= ax;
  }
  GmresCycleResult out;
  const double beta = ops.norm(r0);
  Matrix x = x0;
  Matrix r = r0;
  if (beta > 0.0) {
    Matrix start = r0 / beta;
    Matrix coords = Matrix::Zero(1, 1);
    coords(0, 0) = beta;
    CycleLimits limits{RealVector::Zero(1), std::numeric_limits<Count>::max()};
    auto cyc = minres_cycle(a, ArnoldiFactorization::from_start(start, m + 1), coords, m, limits, x, r,
                            report);
    out.breakdown = cyc.breakdown;
    out.fact = std::move(cyc.fact);
  }
  out.x_new = x.col(0);
  out.r_new = r.col(0);
  out.residual_norm = out.r_new.norm();
  for (const auto& h : report.history) out.residual_history.push_back(h.residual_norm);
  out.ledger = report.ledger;
  return out;
}

namespace detail {

bool confirm_residual(const LinearOperator& a, const Vector& b, const Vector& x, double recurrence_norm,
                      double target, double start_norm, SolveReport& report, Vector* true_residual) {
  Vector ax;
  a.apply(x, ax);
  ++report.verification_matvecs;
  Vector res = b - ax;
  const double explicit_norm = res.norm();
  report.true_norms = {explicit_norm};
  if (true_residual) *true_residual = std::move(res);
  const bool agrees = std::abs(explicit_norm - recurrence_norm) <= 1e-8 * start_norm;
  if (!agrees) report.flag("recurrence_drift");
  return explicit_norm <= target || agrees;
}

}  // namespace detail

SolveResult gmres_restarted(const LinearOperator& a, const Vector& x0, const Vector& b, Index m,
                            double rtol, Count max_matvecs) {
  if (m < 1) throw Error("gmres: m must be >= 1");
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("gmres: rtol must lie in (0, 1)");
  SolveResult out;
  SolveReport& report = out.report;
  report.method = "GMRES(" + std::to_string(m) + ")";
  report.ledger = CostLedger(cost_model_for(a, is_real_valued(b) && is_real_valued(x0)));
  VectorOps ops(report.ledger);

  Matrix x = x0;
  Matrix r = b;
  if (x0.squaredNorm() != 0.0) {
    Vector ax;
    ops.apply(a, x0, ax);
    r.col(0) -= ax;
  }
  double norm = ops.norm(r.col(0));
  const double start = norm;
  const double target = rtol * start;
  report.initial_norms = {start};
  report.record(norm, Phase::gmres);

  CycleLimits limits{RealVector::Constant(1, target), max_matvecs};
  bool out_of_budget = false;
  while (norm > target) {
    if (report.matvecs() >= max_matvecs) {
      out_of_budget = true;
      break;
    }
    Matrix q = r / norm;
    Matrix coords = Matrix::Constant(1, 1, norm);
    auto cyc = minres_cycle(a, ArnoldiFactorization::from_start(q, m + 1), coords, m, limits, x, r, report);
    ++report.cycles;
    norm = cyc.residual_norms(0);
    if (cyc.converged || norm <= target) {
      Vector explicit_r;
      if (detail::confirm_residual(a, b, x.col(0), norm, target, start, report, &explicit_r)) {
        report.converged = true;
        break;
      }
      r.col(0) = explicit_r;
      norm = explicit_r.norm();
    }
    if (cyc.budget_exhausted) {
      out_of_budget = true;
      break;
    }
    if (cyc.breakdown && !cyc.converged) {
      report.flag("breakdown");
      break;
    }
  }
  if (norm <= target && !report.converged) report.converged = true;
  if (!report.converged && out_of_budget) report.flag("budget_exhausted");
  report.final_norms = {norm};
  out.x = x.col(0);
  return out;
}

}  // namespace defl
