#pragma once

#include <vector>

#include "defl/arnoldi.hpp"

namespace defl {

struct HarmonicRitzPair {
  Scalar value;
  Vector vector;  ///< unit norm, length n
};

/// Small-space harmonic Ritz data for a recurrence A V_cols = V_rows Hbar.
struct HarmonicExtraction {
  Vector values;       ///< selected theta, ascending |theta|
  Matrix vectors;      ///< cols x k_eff coordinate eigenvectors (unit norm)
  Matrix span_basis;   ///< cols x k_eff spanning the same space; real for real problems
  Vector all_values;   ///< every theta, ascending |theta|
  bool ritz_fallback = false;  ///< H singular, plain Ritz values used instead
  bool widened = false;        ///< conjugate pair straddled k, one extra kept
};

/// Harmonic Ritz values are the eigenvalues of the pencil
/// (Hbar^H Hbar, H^H), H the leading cols x cols block of Hbar. The k of
/// smallest magnitude are kept. With real_arithmetic a complex conjugate
/// pair is never split and is represented by its real and imaginary parts.
HarmonicExtraction harmonic_extract(const Eigen::Ref<const Matrix>& hbar, Index k, bool real_arithmetic);

/// Full-length harmonic Ritz pairs from a factorization.
std::vector<HarmonicRitzPair> harmonic_ritz(const ArnoldiFactorization& fact, Index k, bool real_arithmetic);

}  // namespace defl
