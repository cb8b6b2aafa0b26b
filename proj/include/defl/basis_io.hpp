#pragma once

#include <cstdint>
#include <string>

#include "defl/gmres_dr.hpp"
#include "defl/projections.hpp"

namespace defl {

/// On-disk layout of a deflation basis directory:
///   V.mtx        dense array, n x rows
///   H.mtx        dense array, rows x k
///   header.json  n, k, rows, field, matrix_checksum, harmonic_values
void export_basis(const std::string& dir, const DeflationBasis& basis, const CsrMatrix& matrix);

/// Reads a basis and checks that it was produced for `matrix`
/// (checksum mismatch throws defl::Error).
DeflationBasis import_basis(const std::string& dir, const CsrMatrix& matrix);

struct BasisHeader {
  Index n = 0;
  Index k = 0;
  Index rows = 0;
  Field field = Field::complex;
  std::uint64_t matrix_checksum = 0;
  Vector harmonic_values;
};

/// Reads basis and header without a matrix check.
DeflationBasis read_basis(const std::string& dir, BasisHeader* header = nullptr);

/// Left-right basis directory: V.mtx, W.mtx, AV.mtx, M.mtx and header.json.
void export_left_right(const std::string& dir, const LeftRightBasis& basis, const CsrMatrix& matrix);
LeftRightBasis import_left_right(const std::string& dir, const CsrMatrix& matrix);

std::string checksum_hex(std::uint64_t value);

}  // namespace defl
