#pragma once

#include <cstdint>
#include <variant>

#include "defl/csr_matrix.hpp"

namespace defl {

/// Upper bidiagonal test matrix: diagonal (0.1, 1, 2, ..., n-1), ones on
/// the superdiagonal. Its eigenvalues are the diagonal entries.
CsrMatrix make_bidiagonal(Index n);
inline CsrMatrix make_bidiagonal_2000() { return make_bidiagonal(2000); }

/// gamma5 = diag(+1 x n/2, -1 x n/2)
struct Gamma5Structure {
  RealVector diag;

  Index dimension() const { return diag.size(); }
  Matrix apply(const Eigen::Ref<const Matrix>& v) const { return diag.cast<Scalar>().asDiagonal() * v; }
};

struct Gamma5Matrix {
  CsrMatrix matrix;
  Gamma5Structure gamma5;
};

struct Gamma5Defaults {
  static constexpr Index n = 1536;
  static constexpr Index bandwidth = 3;
  static constexpr double shift = 3.5;
  static constexpr std::uint64_t seed = 7;
};

/// A = gamma5 H with H Hermitian. H = [[P, Q], [Q^H, -R]] + shift gamma5,
/// where P and R are random Hermitian with `bandwidth` off-diagonals and Q
/// is random banded. Hence A = shift I + [[P, Q], [-Q^H, R]]: a spectrum
/// in the right half plane whose left edge approaches the origin as the
/// shift drops toward the spectral radius of the Hermitian blocks.
Gamma5Matrix make_gamma5_matrix(Index n = Gamma5Defaults::n, Index bandwidth = Gamma5Defaults::bandwidth,
                                double spectrum_shift = Gamma5Defaults::shift,
                                std::uint64_t seed = Gamma5Defaults::seed);

namespace rhs {
struct RandomNormal {};
struct UnitVector {
  Index index;  ///< zero-based
};
struct Related {
  Vector base;
  double epsilon;
};
}  // namespace rhs

using RhsKind = std::variant<rhs::RandomNormal, rhs::UnitVector, rhs::Related>;

/// Real N(0,1) entries, e_j, or base + epsilon * N(0,1) noise.
Vector make_rhs(Index n, const RhsKind& kind, std::uint64_t seed);

}  // namespace defl
