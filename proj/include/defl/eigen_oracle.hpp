#pragma once

#include "defl/types.hpp"

namespace defl {

/// Dense eigendecomposition of a small diagonalizable matrix with unit
/// right eigenvectors z_i and left eigenvectors u_i scaled so that
/// u_i^H z_j = delta_ij. Then r = sum_i alpha_i z_i with alpha_i = u_i^H r.
struct EigenOracle {
  Vector lambda;
  Matrix z;
  Matrix u;

  /// Throws defl::Error when the eigenvector matrix has condition number
  /// above max_condition (numerically defective matrix).
  static EigenOracle compute(const Eigen::Ref<const Matrix>& a, double max_condition = 1e10);

  Index size() const { return lambda.size(); }
  Vector components(const Eigen::Ref<const Vector>& r) const { return u.adjoint() * r; }
};

}  // namespace defl
