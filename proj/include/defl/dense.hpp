#pragma once

#include <vector>

#include "defl/types.hpp"
#include "defl/vector_ops.hpp"

namespace defl {

struct OrthonormalizeResult {
  Matrix q;                        ///< n x j' orthonormal columns
  Matrix r;                        ///< j' x j, block = q * r
  std::vector<Index> kept;         ///< input columns that produced a q column
  std::vector<Index> dependent;    ///< input columns found (numerically) dependent
};

/// Classical Gram-Schmidt with one reorthogonalization pass. A column whose
/// remaining norm is at most drop_tol times its original norm is flagged
/// dependent instead of being normalized. When `ops` is given, length-n
/// work is charged to it.
OrthonormalizeResult orthonormalize(const Eigen::Ref<const Matrix>& block, double drop_tol = 1e-12,
                                    VectorOps* ops = nullptr);

/// Same, but also orthogonalizes against the orthonormal columns of `against`
/// first. R only covers the new columns.
OrthonormalizeResult orthonormalize_against(const Eigen::Ref<const Matrix>& against,
                                            const Eigen::Ref<const Matrix>& block,
                                            double drop_tol = 1e-12, VectorOps* ops = nullptr);

struct LeastSquaresResult {
  Vector solution;
  double residual_norm = 0.0;
  bool rank_deficient = false;
};

/// min ||c - M d||_2 for a small dense M with rows >= cols. Rank-deficient
/// M yields the minimum-norm minimizer and sets rank_deficient.
LeastSquaresResult least_squares_small(const Eigen::Ref<const Matrix>& m,
                                       const Eigen::Ref<const Vector>& c);

struct EigenPairs {
  Vector values;   ///< theta_i
  Matrix vectors;  ///< unit-norm g_i as columns
};

/// Generalized eigenproblem G g = theta B g with B invertible. Real inputs
/// use a real solver so complex values come in exact conjugate pairs.
/// Throws defl::Error when the dense iteration fails or B is singular.
EigenPairs small_eig(const Eigen::Ref<const Matrix>& g, const Eigen::Ref<const Matrix>& b);

/// Standard eigenproblem G g = theta g.
EigenPairs small_eig(const Eigen::Ref<const Matrix>& g);

}  // namespace defl
