#pragma once

#include "defl/linear_operator.hpp"
#include "defl/vector_ops.hpp"

namespace defl {

/// Compact Krylov-type recurrence  A V[:, :cols] = V[:, :rows] Hbar.
///
/// Columns [cols, rows) form the frontier: basis vectors not yet multiplied
/// by A. Plain Arnoldi has a frontier of width 1, block Arnoldi of width p,
/// and a deflated restart leaves the k+1 (or k+p) vectors of the carried
/// eigenvector block with a frontier of 1 (or p).
class ArnoldiFactorization {
 public:
  ArnoldiFactorization() = default;

  /// Orthonormal start block, nothing multiplied yet.
  static ArnoldiFactorization from_start(const Matrix& q, Index capacity = 0);
  /// Existing recurrence with orthonormal V (n x rows) and Hbar (rows x cols).
  static ArnoldiFactorization from_recurrence(const Matrix& v, const Matrix& hbar, Index capacity = 0);

  Index dimension() const { return v_.rows(); }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index frontier() const { return rows_ - cols_; }
  /// True once a frontier vector collapsed into the span of the basis.
  bool invariant() const { return invariant_; }

  auto basis() const { return v_.leftCols(rows_); }
  auto hbar() const { return h_.topLeftCorner(rows_, cols_); }

  struct Extension {
    Index matvecs = 0;
    Index dropped = 0;  ///< frontier vectors whose product added no new direction
  };

  /// Multiplies the whole frontier by A, orthogonalizes each product
  /// against the basis (classical Gram-Schmidt, two passes) and appends
  /// the surviving directions. A product whose remaining norm is at most
  /// breakdown_tol times its norm before orthogonalization is dropped.
  Extension extend(const LinearOperator& a, VectorOps& ops, double breakdown_tol = 1e-14);

  /// ||A V_cols - V_rows Hbar||_F, recomputed with fresh matvecs (test aid).
  double recurrence_residual(const LinearOperator& a) const;
  /// ||V^H V - I||_max
  double orthogonality_error() const;

 private:
  void reserve(Index rows, Index cols);

  Matrix v_;
  Matrix h_;
  Index rows_ = 0;
  Index cols_ = 0;
  bool invariant_ = false;
};

/// Runs `steps` extensions (each consumes one frontier block).
ArnoldiFactorization arnoldi_extend(const LinearOperator& a, ArnoldiFactorization fact, Index steps,
                                    VectorOps& ops);

}  // namespace defl
