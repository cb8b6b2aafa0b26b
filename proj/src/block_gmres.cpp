#include "defl/block_gmres.hpp"

#include "defl/dense.hpp"
#include "defl/projections.hpp"

namespace defl {

namespace {

struct BlockStart {
  ArnoldiFactorization fact;
  Matrix coords;
};

// R = Q S with dependent columns dropped from Q; S keeps every column.
BlockStart block_start(const Matrix& r, Index capacity, VectorOps& ops, SolveReport& report) {
  const auto qr = orthonormalize(r, 1e-12, &ops);
  if (!qr.dependent.empty()) report.flag("block_column_deflated");
  return {ArnoldiFactorization::from_start(qr.q, capacity), qr.r};
}

RealVector column_norms(const Matrix& r, VectorOps& ops) {
  RealVector out(r.cols());
  for (Index j = 0; j < r.cols(); ++j) out(j) = ops.norm(r.col(j));
  return out;
}

void confirm_block(const LinearOperator& a, const Matrix& b, const Matrix& x, const RealVector& norms,
                   const RealVector& targets, const RealVector& starts, SolveReport& report) {
  bool all = true;
  std::vector<double> true_norms;
  for (Index j = 0; j < b.cols(); ++j) {
    SolveReport scratch;
    const bool ok = norms(j) <= targets(j) &&
                    detail::confirm_residual(a, b.col(j), x.col(j), norms(j), targets(j), starts(j), scratch);
    if (scratch.has_flag("recurrence_drift")) report.flag("recurrence_drift");
    report.verification_matvecs += scratch.verification_matvecs;
    true_norms.push_back(scratch.true_norms.empty() ? norms(j) : scratch.true_norms[0]);
    all = all && ok;
  }
  report.true_norms = true_norms;
  report.converged = all;
}

}  // namespace

void validate_block_config(Index m, Index p, Index k) {
  if (p < 1) throw Error("block gmres: block size must be >= 1");
  if (k < 0 || k >= m) throw Error("block gmres: need 0 <= k < m");
  if ((m - k) / p < 1)
    throw Error("block gmres: (m - k) / p = " + std::to_string((m - k) / p) +
                " block steps per cycle; each right-hand side would get less than one new Krylov direction "
                "per cycle, which is not enough to converge. Use a larger m or a smaller block size.");
}

BlockSolveResult block_gmres_dr_solve(const LinearOperator& a, const Matrix& b, const BlockDrConfig& config) {
  validate_block_config(config.m, config.p, config.k);
  if (config.k < 1) throw Error("block gmres-dr: k must be >= 1");
  if (b.cols() != config.p) throw Error("block gmres-dr: B must have p columns");
  if (b.rows() != a.dimension()) throw Error("block gmres-dr: B has the wrong number of rows");
  if (!(config.rtol > 0.0 && config.rtol < 1.0)) throw Error("block gmres-dr: rtol must lie in (0, 1)");

  BlockSolveResult out;
  SolveReport& report = out.report;
  report.method = "Bl-GMRES-DR(" + std::to_string(config.m) + "," + std::to_string(config.p) + "," +
                  std::to_string(config.k) + ")";
  const bool real = a.is_real() && is_real_valued(b);
  report.ledger = CostLedger(cost_model_for(a, real));
  VectorOps ops(report.ledger);

  Matrix x = Matrix::Zero(a.dimension(), config.p);
  Matrix r = b;
  RealVector norms = column_norms(r, ops);
  const RealVector starts = norms;
  const RealVector targets = config.rtol * starts;
  report.initial_norms.assign(starts.data(), starts.data() + starts.size());
  for (Index j = 0; j < config.p; ++j) report.record(norms(j), Phase::gmres, j);
  if ((norms.array() <= targets.array()).all()) {
    report.converged = true;
    report.final_norms = report.initial_norms;
    out.x = x;
    return out;
  }

  const Index capacity = config.m + config.p;
  CycleLimits limits{targets, config.max_matvecs};
  auto start = block_start(r, capacity, ops, report);
  ArnoldiFactorization fact = std::move(start.fact);
  Matrix coords = std::move(start.coords);
  while (true) {
    auto cyc = minres_cycle(a, std::move(fact), coords, config.m, limits, x, r, report);
    ++report.cycles;
    norms = cyc.residual_norms;
    const bool done = (norms.array() <= targets.array()).all();
    bool stop = done;
    if (!done && (cyc.budget_exhausted || report.matvecs() >= config.max_matvecs)) {
      report.flag("budget_exhausted");
      stop = true;
    } else if (!done && cyc.breakdown) {
      report.flag("breakdown");
      stop = true;
    }
    if (stop) {
      out.basis = extract_deflation_basis(cyc.fact, cyc.residual_coords, config.k, real, ops, report);
      break;
    }
    const auto ext = harmonic_extract(cyc.fact.hbar(), config.k, real);
    if (ext.ritz_fallback) report.flag("ritz_fallback");
    auto rs = dr_restart(cyc.fact, ext.span_basis, cyc.residual_coords, ops, capacity + 1);
    if (rs.complemented) report.flag("restart_complemented");
    fact = std::move(rs.fact);
    coords = std::move(rs.coords);
  }
  if ((norms.array() <= targets.array()).all()) confirm_block(a, b, x, norms, targets, starts, report);
  report.final_norms.assign(norms.data(), norms.data() + norms.size());
  out.x = x;
  return out;
}

BlockSolveResult bl_gmres_proj_solve(const LinearOperator& a, const DeflationBasis& basis, const Matrix& b,
                                     Index m, Index k, double rtol, Count max_matvecs) {
  const Index p = b.cols();
  validate_block_config(m, p, 0);
  if (k < 0 || k > basis.k()) throw Error("block gmres-proj: k exceeds the deflation basis");
  if (!(rtol > 0.0 && rtol < 1.0)) throw Error("block gmres-proj: rtol must lie in (0, 1)");
  const DeflationBasis used = basis.truncated(k);

  BlockSolveResult out;
  SolveReport& report = out.report;
  report.method = "Bl-GMRES(" + std::to_string(m) + "," + std::to_string(p) + ")-Proj(" + std::to_string(k) + ")";
  report.ledger = CostLedger(cost_model_for(a, a.is_real() && is_real_valued(b)));
  VectorOps ops(report.ledger);

  Matrix x = Matrix::Zero(a.dimension(), p);
  Matrix r = b;
  RealVector norms = column_norms(r, ops);
  const RealVector starts = norms;
  const RealVector targets = rtol * starts;
  report.initial_norms.assign(starts.data(), starts.data() + starts.size());
  for (Index j = 0; j < p; ++j) report.record(norms(j), Phase::gmres, j);

  CycleLimits limits{targets, max_matvecs};
  while (!(norms.array() <= targets.array()).all() && report.matvecs() < max_matvecs) {
    if (!used.empty()) {
      const Count ops_before = report.ledger.vector_ops();
      const Count flops_before = report.ledger.flops();
      auto proj = minres_project_block(used, x, r, ops, norms);
      x = std::move(proj.x_new);
      r = std::move(proj.r_new);
      norms = proj.norms_after;
      for (Index j = 0; j < p; ++j) report.record(norms(j), Phase::projection, j);
      report.projection_vector_ops += report.ledger.vector_ops() - ops_before;
      report.projection_flops += report.ledger.flops() - flops_before;
      ++report.projections;
      if ((norms.array() <= targets.array()).all()) break;
    }
    auto start = block_start(r, m + p, ops, report);
    auto cyc = minres_cycle(a, std::move(start.fact), start.coords, m, limits, x, r, report);
    ++report.cycles;
    norms = cyc.residual_norms;
    if (cyc.budget_exhausted) break;
    if (cyc.breakdown && !cyc.converged) {
      report.flag("breakdown");
      break;
    }
  }
  if ((norms.array() <= targets.array()).all())
    confirm_block(a, b, x, norms, targets, starts, report);
  else
    report.flag("budget_exhausted");
  report.final_norms.assign(norms.data(), norms.data() + norms.size());
  out.x = x;
  return out;
}

BlockGroupRun solve_in_groups(const LinearOperator& a, const Matrix& b, const BlockGroupConfig& config) {
  const Index p = config.first.p;
  BlockGroupRun run;
  DeflationBasis basis;
  for (Index start = 0; start < b.cols(); start += p) {
    const Index width = std::min(p, b.cols() - start);
    const Matrix group = b.middleCols(start, width);
    BlockSolveResult res;
    if (start == 0) {
      BlockDrConfig first = config.first;
      first.p = width;
      res = block_gmres_dr_solve(a, group, first);
      basis = res.basis;
    } else {
      res = bl_gmres_proj_solve(a, basis, group, config.m_proj, std::min(config.first.k, basis.k()),
                                config.first.rtol, config.group_budget);
    }
    run.total_matvecs += res.report.matvecs();
    run.all_converged = run.all_converged && res.report.converged;
    const bool failed = !res.report.converged;
    run.groups.push_back(std::move(res));
    if (start == 0 && failed) break;
  }
  return run;
}

}  // namespace defl
