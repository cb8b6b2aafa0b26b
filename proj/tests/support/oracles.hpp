#pragma once

// Independent reference computations for the tests. Nothing here calls
// the solver library except to read its plain data types.

#include <cstdint>
#include <random>

#include "defl/types.hpp"

namespace defl::oracle {

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }
  Scalar complex_normal() { return {normal(), normal()}; }
  Vector vector(Index n, bool complex = true);
  Matrix matrix(Index rows, Index cols, bool complex = true);

 private:
  std::mt19937_64 engine_;
};

/// A = Z diag(lambda) Z^{-1} with unit right eigenvectors Z and left
/// eigenvectors U = Z^{-H} (so U^H Z = I). Built from the eigendata, so
/// the decomposition is exact up to rounding in forming A.
struct KnownSpectrum {
  Matrix a;
  Vector lambda;
  Matrix z;
  Matrix u;
  Vector components(const Vector& r) const { return u.adjoint() * r; }
};

/// Well-separated random eigenvalues in an annulus, eigenvectors a random
/// perturbation of the identity (condition number modest).
KnownSpectrum random_diagonalizable(Gen& g, Index n, bool complex = true, double nonnormality = 0.5);

/// Orthonormal basis of span{r, A r, ..., A^{m-1} r} by Householder QR of
/// the scaled power sequence.
Matrix krylov_basis(const Matrix& a, const Vector& r, Index m);

/// Orthonormal basis of the column span (Householder QR, no pivoting drop).
Matrix orth(const Matrix& s);

/// argmin over x in x0 + span(Q) of ||b - A x||, by QR of A Q.
Vector dense_minres(const Matrix& a, const Vector& x0, const Vector& b, const Matrix& q);

/// Column-wise block version: minimizes ||B - A X||_F over X0 + span(Q)
/// for each column independently with the same space.
Matrix dense_block_minres(const Matrix& a, const Matrix& x0, const Matrix& b, const Matrix& q);

/// Petrov-Galerkin: x0 + V d with (W^H A V) d = W^H r0.
Vector dense_petrov_galerkin(const Matrix& a, const Vector& x0, const Vector& r0, const Matrix& v, const Matrix& w);

/// z_1-component of the residual after a minimum-residual projection over
/// span{z_1}: -sum_{i>=2} alpha_i z_1^H z_i.
Scalar minres_component_formula(const KnownSpectrum& s, const Vector& alpha, Index j);

/// z_j-component after a left-right projection with right vector z_j and
/// left vector w = sum beta_i u_i: -sum_{i!=j} alpha_i conj(beta_i) / conj(beta_j).
Scalar left_right_component_formula(const Vector& alpha, const Vector& beta, Index j);

/// Textbook BiCGStab (shadow r0) on dense A, recording ||s|| and ||r||
/// after each product; stops at ||r|| <= target or max_matvecs.
struct BicgstabTrace {
  Vector x;
  std::vector<double> norms;
};
BicgstabTrace reference_bicgstab(const Matrix& a, const Vector& b, double target, Index max_matvecs);

/// Smallest singular value of G - theta B relative to ||G|| + |theta| ||B||:
/// near zero exactly when theta is an eigenvalue of the pencil (G, B).
double pencil_residual(const Matrix& g, const Matrix& b, Scalar theta);

}  // namespace defl::oracle
