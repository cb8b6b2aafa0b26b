#pragma once

#include <vector>

#include "defl/types.hpp"

namespace defl {

/// Incremental QR of a growing (rows x cols) projected matrix via Givens
/// rotations, solving min ||C - Hbar D||_F column by column of C.
///
/// Columns may carry nonzeros arbitrarily far below the diagonal (full DR
/// block, block Hessenberg); each new column is reduced bottom-up.
class GivensLeastSquares {
 public:
  /// `rhs` holds the initial coordinates (rows x s).
  explicit GivensLeastSquares(const Matrix& rhs);

  /// Grows the row space; new rhs rows are zero.
  void add_rows(Index count);
  /// Appends a column of length <= rows() (shorter columns are zero padded).
  /// Returns the number of rotations generated.
  Index add_column(const Eigen::Ref<const Vector>& column);

  Index rows() const { return g_.rows(); }
  Index cols() const { return cols_; }
  Index rhs_count() const { return g_.cols(); }

  /// Residual norm per rhs column for the current column count.
  RealVector residual_norms() const;
  /// Back substitution; cols x s.
  Matrix solve() const;
  /// Smallest |R(i,i)| relative to the largest.
  double diagonal_ratio() const;

 private:
  struct Rotation {
    Index row;  // acts on (row, row+1)
    double c;
    Scalar s;
  };
  static void apply(const Rotation& rot, Scalar& x, Scalar& y);

  Matrix r_;  // rows x cols, capacity managed by conservativeResize
  Matrix g_;
  Index cols_ = 0;
  std::vector<Rotation> rotations_;
};

}  // namespace defl
