#pragma once

#include <random>

#include "defl/types.hpp"

namespace defl {

/// std::mt19937_64 with explicit variate transforms so sequences do not
/// depend on the standard library's distribution implementations:
///   uniform: (u64 >> 11 | 0.5) * 2^-53, strictly inside (0, 1)
///   normal:  Box-Muller, both outputs of each pair are used in order
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  Scalar complex_normal();

  Vector normal_vector(Index n);
  Vector complex_normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);
  Matrix complex_normal_matrix(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace defl
