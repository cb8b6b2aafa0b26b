#include "defl/gmres_dr.hpp"

#include <limits>

#include "defl/dense.hpp"

namespace defl {

DeflationBasis DeflationBasis::truncated(Index keep) const {
  if (keep < 0 || keep > k()) throw Error("deflation basis: cannot keep more columns than stored");
  DeflationBasis out;
  if (keep == 0) return out;
  out.v = v;
  out.hbar = hbar.leftCols(keep);
  out.harmonic_values = harmonic_values.head(std::min<Index>(keep, harmonic_values.size()));
  return out;
}

double DeflationBasis::recurrence_residual(const LinearOperator& a) const {
  if (empty()) return 0.0;
  Matrix av;
  a.apply_block(Matrix(v.leftCols(k())), av);
  return (av - v * hbar).norm();
}

double DeflationBasis::orthogonality_error() const {
  if (v.cols() == 0) return 0.0;
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

void DeflationBasis::validate(double tol) const {
  if (empty()) return;
  if (hbar.rows() != v.cols()) throw Error("deflation basis: Hbar rows must equal basis columns");
  if (hbar.cols() > hbar.rows()) throw Error("deflation basis: more columns than rows in Hbar");
  if (orthogonality_error() > tol) throw Error("deflation basis: V is not orthonormal");
}

DeflationBasis deflation_basis_from_subspace(const LinearOperator& a, const Matrix& s, VectorOps& ops) {
  const auto q = orthonormalize(s, 1e-12, &ops);
  const Index k = q.q.cols();
  Matrix aq;
  ops.apply_block(a, q.q, aq);
  const auto extra = orthonormalize_against(q.q, aq, 1e-12, &ops);
  DeflationBasis out;
  out.v.resize(s.rows(), k + extra.q.cols());
  out.v << q.q, extra.q;
  out.hbar = out.v.adjoint() * aq;
  ops.ledger().record_vector_ops(out.v.cols() * k);
  return out;
}

RestartResult dr_restart(const ArnoldiFactorization& fact, const Matrix& span_basis,
                         const Matrix& residual_coords, VectorOps& ops, Index capacity) {
  const Index rows = fact.rows();
  const Index cols = fact.cols();
  const Index k = span_basis.cols();
  const Index s = residual_coords.cols();
  const CostModel& model = ops.ledger().model();

  Matrix candidates = Matrix::Zero(rows, k + s);
  candidates.topLeftCorner(cols, k) = span_basis;
  candidates.rightCols(s) = residual_coords;
  const auto first = orthonormalize(candidates.leftCols(k), 1e-10);
  const Index kk = first.q.cols();
  // Residual coordinates that vanish carry no direction; treat them as dependent.
  auto second = orthonormalize_against(first.q, residual_coords, 1e-10);
  RestartResult out;
  if (second.q.cols() < s && kk < rows) {
    // Fill the frontier from the range of Hbar P_k, which still satisfies
    // the recurrence A V P_k = V Hbar P_k.
    const Matrix hp = fact.hbar() * first.q.topRows(cols);
    Matrix base(rows, kk + second.q.cols());
    base << first.q, second.q;
    const auto extra = orthonormalize_against(base, hp, 1e-10);
    const Index take = std::min<Index>(extra.q.cols(), s - second.q.cols());
    if (take > 0) {
      Matrix merged(rows, second.q.cols() + take);
      merged << second.q, extra.q.leftCols(take);
      second.q = merged;
      out.complemented = true;
    }
  }
  Matrix p(rows, kk + second.q.cols());
  p << first.q, second.q;
  ops.ledger().record_small_dense(model.small_product(rows, p.cols(), p.cols()) * 4);

  const Matrix v_new = ops.combine(fact.basis(), p);
  const Matrix h_new = p.adjoint() * fact.hbar() * first.q.topRows(cols);
  ops.ledger().record_small_dense(model.small_product(p.cols(), rows, cols) +
                                  model.small_product(p.cols(), cols, kk));
  out.coords = p.adjoint() * residual_coords;
  out.fact = ArnoldiFactorization::from_recurrence(v_new, h_new, capacity);
  return out;
}

DeflationBasis extract_deflation_basis(const ArnoldiFactorization& fact, const Matrix& residual_coords, Index k,
                                       bool real_arithmetic, VectorOps& ops, SolveReport& report) {
  DeflationBasis out;
  if (fact.cols() == 0) return out;
  if (fact.cols() <= k) {
    // Subspace no larger than requested: hand it down as is.
    out.v = fact.basis();
    out.hbar = fact.hbar();
    if (fact.rows() == fact.cols()) out.harmonic_values = small_eig(out.hbar).values;
    report.flag("trivial_basis");
    return out;
  }
  const auto ext = harmonic_extract(fact.hbar(), k, real_arithmetic);
  if (ext.ritz_fallback) report.flag("ritz_fallback");
  auto rs = dr_restart(fact, ext.span_basis, residual_coords, ops, 0);
  out.v = rs.fact.basis();
  out.hbar = rs.fact.hbar();
  out.harmonic_values = ext.values;
  return out;
}

GmresDrResult gmres_dr_solve(const LinearOperator& a, const Vector& b, const GmresDrConfig& config,
                             const std::optional<Vector>& x0) {
  const Index n = a.dimension();
  if (b.size() != n) throw Error("gmres-dr: right-hand side length does not match operator");
  if (config.k < 1 || config.m <= config.k) throw Error("gmres-dr: need 1 <= k < m");
  if (!(config.rtol > 0.0 && config.rtol < 1.0)) throw Error("gmres-dr: rtol must lie in (0, 1)");

  GmresDrResult out;
  SolveReport& report = out.report;
  report.method = "GMRES-DR(" + std::to_string(config.m) + "," + std::to_string(config.k) + ")";
  const bool real = a.is_real() && is_real_valued(b) && (!x0 || is_real_valued(*x0));
  report.ledger = CostLedger(cost_model_for(a, real));
  VectorOps ops(report.ledger);

  Matrix x = x0 ? Matrix(*x0) : Matrix(Matrix::Zero(n, 1));
  Matrix r = b;
  if (x0 && x0->squaredNorm() != 0.0) {
    Vector ax;
    ops.apply(a, *x0, ax);
    r.col(0) -= ax;
  }
  double norm = ops.norm(r.col(0));
  const double start = norm;
  const double target = config.rtol * start;
  report.initial_norms = {start};
  report.record(norm, Phase::gmres);
  if (norm == 0.0) {
    report.converged = true;
    report.final_norms = {0.0};
    out.x = x.col(0);
    return out;
  }

  const Index capacity = config.m + 1;
  CycleLimits limits{RealVector::Constant(1, target), config.max_matvecs};
  ArnoldiFactorization fact = ArnoldiFactorization::from_start(r / norm, capacity);
  Matrix coords = Matrix::Constant(1, 1, norm);
  while (true) {
    auto cyc = minres_cycle(a, std::move(fact), coords, config.m, limits, x, r, report);
    ++report.cycles;
    norm = cyc.residual_norms(0);
    bool stop = false;
    if (cyc.converged || norm <= target) {
      Vector explicit_r;
      if (detail::confirm_residual(a, b, x.col(0), norm, target, start, report, &explicit_r)) {
        report.converged = true;
      } else {
        report.flag("not_confirmed");
      }
      stop = true;
    } else if (cyc.budget_exhausted || report.matvecs() >= config.max_matvecs) {
      report.flag("budget_exhausted");
      stop = true;
    } else if (cyc.breakdown) {
      report.flag("breakdown");
      stop = true;
    }
    if (stop) {
      out.basis = extract_deflation_basis(cyc.fact, cyc.residual_coords, config.k, real, ops, report);
      break;
    }
    const auto ext = harmonic_extract(cyc.fact.hbar(), config.k, real);
    if (ext.ritz_fallback) report.flag("ritz_fallback");
    out.harmonic_history.push_back(ext.values);
    auto rs = dr_restart(cyc.fact, ext.span_basis, cyc.residual_coords, ops, capacity + 1);
    if (rs.complemented) report.flag("restart_complemented");
    fact = std::move(rs.fact);
    coords = std::move(rs.coords);
  }
  report.final_norms = {norm};
  out.x = x.col(0);
  return out;
}

}  // namespace defl
