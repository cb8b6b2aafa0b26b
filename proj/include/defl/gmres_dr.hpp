#pragma once

#include <optional>
#include <vector>

#include "defl/gmres.hpp"
#include "defl/harmonic_ritz.hpp"

namespace defl {

/// Approximate invariant subspace in compact recurrence form:
/// A V[:, :k] = V Hbar, V orthonormal n x rows, Hbar rows x k.
/// rows is k+1 for a single-vector basis, k+p for a block basis, and k
/// when the subspace is invariant.
struct DeflationBasis {
  Matrix v;
  Matrix hbar;
  Vector harmonic_values;

  Index k() const { return hbar.cols(); }
  Index rows() const { return v.rows() == 0 ? 0 : v.cols(); }
  Index dimension() const { return v.rows(); }
  bool empty() const { return hbar.cols() == 0; }

  /// First `keep` columns of V_k with all rows of V retained, so
  /// A V[:, :keep] = V Hbar[:, :keep] still holds.
  DeflationBasis truncated(Index keep) const;
  /// ||A V_k - V Hbar||_F with fresh matvecs (test aid).
  double recurrence_residual(const LinearOperator& a) const;
  double orthogonality_error() const;
  /// Shape and orthonormality checks; throws defl::Error.
  void validate(double tol = 1e-8) const;
};

/// Block-capable alias: rows = k + p.
using BlockDeflationBasis = DeflationBasis;

/// Builds a compact basis from any n x k block S (A S computed with k matvecs).
DeflationBasis deflation_basis_from_subspace(const LinearOperator& a, const Matrix& s, VectorOps& ops);

struct RestartResult {
  ArnoldiFactorization fact;  ///< V_new (rows' columns), Hbar_new (rows' x k')
  Matrix coords;              ///< residual coordinates in V_new
  bool complemented = false;  ///< residual coordinates were dependent; frontier filled another way
};

/// Deflated restart: keeps span{V_cols span_basis} and the residual
/// directions V residual_coords, re-expressed as a compact recurrence.
/// Costs rows * rows' length-n operations and no matvecs.
RestartResult dr_restart(const ArnoldiFactorization& fact, const Matrix& span_basis,
                         const Matrix& residual_coords, VectorOps& ops, Index capacity);

/// Deflation subspace of a finished cycle: harmonic extraction plus restart
/// assembly (no matvecs). A factorization with at most k multiplied
/// columns is handed down unchanged and flagged "trivial_basis".
DeflationBasis extract_deflation_basis(const ArnoldiFactorization& fact, const Matrix& residual_coords, Index k,
                                       bool real_arithmetic, VectorOps& ops, SolveReport& report);

struct GmresDrConfig {
  Index m = 25;
  Index k = 10;
  double rtol = 1e-8;
  Count max_matvecs = 100000;
};

struct GmresDrResult {
  Vector x;
  DeflationBasis basis;
  SolveReport report;
  std::vector<Vector> harmonic_history;  ///< kept harmonic Ritz values after each cycle
};

/// GMRES-DR(m, k): first cycle is GMRES(m); every later cycle keeps the k
/// harmonic Ritz vectors of smallest magnitude and spends m - k matvecs.
/// On return `basis` holds the deflation subspace of the final cycle.
GmresDrResult gmres_dr_solve(const LinearOperator& a, const Vector& b, const GmresDrConfig& config,
                             const std::optional<Vector>& x0 = std::nullopt);

}  // namespace defl
