#pragma once

#include <cstdint>

#include "defl/generators.hpp"
#include "defl/gmres_dr.hpp"

namespace defl {

struct LeftBasisConfig {
  Index m = 40;
  Index k = 20;        ///< vectors carried by the adjoint run
  Index keep = 20;     ///< vectors returned (smallest |theta| first)
  Index cycles = 20;   ///< 0 = run until rtol instead of a fixed cycle count
  double rtol = 1e-8;
  std::uint64_t seed = 1;
};

struct LeftBasisResult {
  Matrix w;       ///< n x keep orthonormal (keep + 1 when a conjugate pair straddles the cut)
  Vector values;  ///< harmonic values of A^H for the kept vectors
  SolveReport report;
};

/// Approximate left eigenvectors of A: GMRES-DR(m, k) on A^H with a random
/// right-hand side, then the `keep` harmonic Ritz vectors of smallest
/// magnitude from the final deflation subspace.
LeftBasisResult compute_left_basis(const LinearOperator& a, const LeftBasisConfig& config);

/// Left vectors from right vectors of a gamma5-Hermitian matrix:
/// orthonormal basis of gamma5 V. No operator applications.
Matrix gamma5_left_basis(const Gamma5Structure& gamma5, const Eigen::Ref<const Matrix>& v);

/// Cosines of the principal angles between the column spans of two
/// orthonormal blocks, descending.
RealVector principal_angle_cosines(const Eigen::Ref<const Matrix>& q1, const Eigen::Ref<const Matrix>& q2);

}  // namespace defl
