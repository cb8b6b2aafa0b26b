#pragma once

#include <iosfwd>
#include <string>

#include "defl/csr_matrix.hpp"

namespace defl {

/// Malformed input. `line()` is 1-based, 0 when no line applies.
class MatrixMarketError : public Error {
 public:
  MatrixMarketError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Coordinate format; real, integer, complex or pattern fields; general,
/// symmetric, skew-symmetric or hermitian storage (expanded on read).
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::string& path);

/// Writes "coordinate <field> general"; field is real when every entry is real.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);
void write_matrix_market(const std::string& path, const CsrMatrix& a);

/// Dense array format (column major).
Matrix read_dense_matrix_market(std::istream& in);
Matrix read_dense_matrix_market(const std::string& path);
void write_dense_matrix_market(std::ostream& out, const Matrix& a);
void write_dense_matrix_market(const std::string& path, const Matrix& a);

}  // namespace defl
