#pragma once

#include "defl/arnoldi.hpp"
#include "defl/solve_report.hpp"

namespace defl {

struct CycleLimits {
  RealVector target_norms;  ///< absolute residual target per rhs column
  Count max_matvecs = 0;    ///< total budget on report.ledger
};

/// State after one minimum-residual cycle over a (possibly block) Krylov
/// recurrence.
struct CycleResult {
  ArnoldiFactorization fact;
  Matrix coords;           ///< C: rhs coordinates in fact.basis() at cycle start
  Matrix solution;         ///< D: minimizer of ||C - Hbar D|| (cols x s)
  Matrix residual_coords;  ///< C - Hbar D  (rows x s)
  RealVector residual_norms;
  Index matvecs = 0;
  bool converged = false;
  bool breakdown = false;
  bool budget_exhausted = false;
};

/// Extends `fact` up to `max_cols` multiplied columns, minimizing
/// ||C - Hbar D|| after every extension (Givens QR), and stops early on
/// convergence of every column, breakdown or budget exhaustion. On return
/// x += V D and r = V (C - Hbar D).
CycleResult minres_cycle(const LinearOperator& a, ArnoldiFactorization fact, const Matrix& coords,
                         Index max_cols, const CycleLimits& limits, Matrix& x, Matrix& r,
                         SolveReport& report);

struct GmresCycleResult {
  Vector x_new;
  Vector r_new;
  double residual_norm = 0.0;
  std::vector<double> residual_history;  ///< per Arnoldi step
  CostLedger ledger;
  ArnoldiFactorization fact;
  bool breakdown = false;
};

/// One cycle of GMRES(m) from x0.
GmresCycleResult gmres_cycle(const LinearOperator& a, const Vector& x0, const Vector& b, Index m);

struct SolveResult {
  Vector x;
  SolveReport report;
};

/// Restarted GMRES(m). Stops when ||r|| <= rtol ||r_start|| (recurrence
/// norm, confirmed once with an explicit residual) or when the matvec
/// budget is spent.
SolveResult gmres_restarted(const LinearOperator& a, const Vector& x0, const Vector& b, Index m,
                            double rtol, Count max_matvecs);

namespace detail {

/// Explicit residual check after a recurrence-converged solve. Returns true
/// when the explicit norm meets the target or agrees with the recurrence
/// norm within 1e-8 of the starting norm.
bool confirm_residual(const LinearOperator& a, const Vector& b, const Vector& x, double recurrence_norm,
                      double target, double start_norm, SolveReport& report, Vector* true_residual = nullptr);

}  // namespace detail

}  // namespace defl
