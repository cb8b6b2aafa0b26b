#pragma once

#include <vector>

#include "defl/types.hpp"

namespace defl {

struct Triplet {
  Index row;
  Index col;
  Scalar value;
};

/// Square sparse matrix in compressed sparse row layout.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Takes ownership of raw CSR arrays; throws on malformed structure.
  CsrMatrix(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
            std::vector<Scalar> values);

  /// Builds from unordered triplets. Duplicate entries are summed.
  static CsrMatrix from_triplets(Index n, std::vector<Triplet> triplets);
  static CsrMatrix from_dense(const Matrix& dense, double drop = 0.0);
  static CsrMatrix identity(Index n);

  Index dimension() const { return n_; }
  Index nonzeros() const { return static_cast<Index>(values_.size()); }
  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<Scalar>& values() const { return values_; }

  bool is_real() const;
  Matrix to_dense() const;
  std::vector<Triplet> to_triplets() const;

  void multiply(const Vector& x, Vector& y) const;
  void multiply_adjoint(const Vector& x, Vector& y) const;
  CsrMatrix adjoint() const;

  /// FNV-1a hash over dimension, structure and value bit patterns.
  std::uint64_t checksum() const;

 private:
  void validate() const;

  Index n_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<Scalar> values_;
};

}  // namespace defl
