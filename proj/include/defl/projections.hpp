#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "defl/gmres_dr.hpp"

namespace defl {

struct ProjectionOutcome {
  Vector x_new;
  Vector r_new;
  Vector d;
  double residual_norm_before = 0.0;
  double residual_norm_after = 0.0;
  bool rank_deficient = false;
  std::vector<std::string> flags;
};

/// Minimum-residual projection over span(V_k) using A V_k = V Hbar:
/// d = argmin ||c - Hbar d|| with c = V^H r0, then x0 + V_k d and
/// r0 - V (Hbar d). No operator applications. With norm_before supplied
/// the cost is rows + 2k + 1 length-n operations (3k+2 for a single-vector
/// basis); the new norm comes from ||r0||^2 - ||c||^2 + ||c - Hbar d||^2
/// unless cancellation makes an explicit norm necessary.
ProjectionOutcome minres_project(const DeflationBasis& basis, const Vector& x0, const Vector& r0,
                                 VectorOps& ops, std::optional<double> norm_before = std::nullopt);

/// Column-by-column projection of a block, sharing one factorization of Hbar.
struct BlockProjectionOutcome {
  Matrix x_new;
  Matrix r_new;
  RealVector norms_before;
  RealVector norms_after;
};
BlockProjectionOutcome minres_project_block(const DeflationBasis& basis, const Matrix& x0, const Matrix& r0,
                                            VectorOps& ops, const RealVector& norms_before);

/// Right block V and left block W (both orthonormal) with the cached
/// product AV and M = W^H A V factored once.
class LeftRightBasis {
 public:
  /// AV = V Hbar[:, :k] from the recurrence; no matvecs.
  static LeftRightBasis from_deflation(const DeflationBasis& right, const Matrix& w, VectorOps& ops);
  /// Orthonormalizes v and w, then AV with k matvecs.
  static LeftRightBasis from_vectors(const LinearOperator& a, const Matrix& v, const Matrix& w,
                                     VectorOps& ops);
  /// Rebuilds from stored blocks (AV given).
  static LeftRightBasis from_parts(Matrix v, Matrix w, Matrix av);

  Index k() const { return v_.cols(); }
  const Matrix& v() const { return v_; }
  const Matrix& w() const { return w_; }
  const Matrix& av() const { return av_; }
  const Matrix& m() const { return m_; }
  double condition() const { return condition_; }
  Vector solve(const Vector& rhs) const { return lu_.solve(rhs); }

 private:
  void finish();

  Matrix v_;
  Matrix w_;
  Matrix av_;
  Matrix m_;
  Eigen::PartialPivLU<Matrix> lu_;
  double condition_ = 0.0;
};

/// Oblique projection: M d = W^H r0, x0 + V d, r0 - AV d. The residual
/// norm may grow.
ProjectionOutcome lr_project(const LeftRightBasis& basis, const Vector& x0, const Vector& r0, VectorOps& ops);

struct PriorSolution {
  Vector x;
  Vector b;
  Vector r;  ///< final residual b - A x of that solve
};

/// Projects the residual over earlier solutions, one direction at a time,
/// using A x_j = b_j - r_j. Directions with A x_j ~ 0 are skipped and flagged.
ProjectionOutcome project_over_solutions(const std::vector<PriorSolution>& prior, const Vector& x0,
                                         const Vector& r0, VectorOps& ops);
/// Same span, projected in one minimum-residual step.
ProjectionOutcome project_over_solutions_joint(const std::vector<PriorSolution>& prior, const Vector& x0,
                                               const Vector& r0, VectorOps& ops);

}  // namespace defl
