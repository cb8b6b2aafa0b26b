#include "defl/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace defl {

namespace {

enum class MmFormat { coordinate, array };
enum class MmField { real, integer, complex, pattern };
enum class MmSymmetry { general, symmetric, skew, hermitian };

struct Header {
  MmFormat format;
  MmField field;
  MmSymmetry symmetry;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }
  // Skips comments and blank lines.
  bool next_data(std::string& line) {
    while (next(line)) {
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

Header parse_header(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) throw MatrixMarketError(1, "empty input");
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw MatrixMarketError(reader.line_no(), "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") throw MatrixMarketError(reader.line_no(), "unsupported object '" + object + "'");
  Header h{};
  format = lower(format);
  if (format == "coordinate") h.format = MmFormat::coordinate;
  else if (format == "array") h.format = MmFormat::array;
  else throw MatrixMarketError(reader.line_no(), "unsupported format '" + format + "'");
  field = lower(field);
  if (field == "real" || field == "double") h.field = MmField::real;
  else if (field == "integer") h.field = MmField::integer;
  else if (field == "complex") h.field = MmField::complex;
  else if (field == "pattern") h.field = MmField::pattern;
  else throw MatrixMarketError(reader.line_no(), "unsupported field '" + field + "'");
  symmetry = lower(symmetry);
  if (symmetry == "general") h.symmetry = MmSymmetry::general;
  else if (symmetry == "symmetric") h.symmetry = MmSymmetry::symmetric;
  else if (symmetry == "skew-symmetric") h.symmetry = MmSymmetry::skew;
  else if (symmetry == "hermitian") h.symmetry = MmSymmetry::hermitian;
  else throw MatrixMarketError(reader.line_no(), "unsupported symmetry '" + symmetry + "'");
  if (h.field == MmField::pattern && h.format == MmFormat::array)
    throw MatrixMarketError(reader.line_no(), "pattern field is invalid for array format");
  return h;
}

class Tokens {
 public:
  Tokens(const std::string& line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  std::string_view next(const char* what) {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (pos_ >= line_.size()) throw MatrixMarketError(line_no_, std::string("missing ") + what);
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    return std::string_view(line_).substr(start, pos_ - start);
  }
  long long integer(const char* what) {
    auto tok = next(what);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw MatrixMarketError(line_no_, std::string("invalid ") + what + " '" + std::string(tok) + "'");
    return v;
  }
  double real(const char* what) {
    auto tok = next(what);
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
      throw MatrixMarketError(line_no_, std::string("invalid ") + what + " '" + s + "'");
    return v;
  }
  void expect_end() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    if (pos_ < line_.size()) throw MatrixMarketError(line_no_, "unexpected trailing data");
  }

 private:
  const std::string& line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

Scalar read_value(Tokens& t, MmField field) {
  switch (field) {
    case MmField::pattern: return 1.0;
    case MmField::integer: return static_cast<double>(t.integer("value"));
    case MmField::real: return t.real("value");
    case MmField::complex: {
      const double re = t.real("real part");
      const double im = t.real("imaginary part");
      return {re, im};
    }
  }
  return 0.0;
}

void write_number(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void write_value(std::ostream& out, const Scalar& v, bool real) {
  write_number(out, v.real());
  if (!real) {
    out << ' ';
    write_number(out, v.imag());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError(0, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
  LineReader reader(in);
  const Header h = parse_header(reader);
  if (h.format != MmFormat::coordinate)
    throw MatrixMarketError(reader.line_no(), "expected coordinate format for a sparse matrix");
  std::string line;
  if (!reader.next_data(line)) throw MatrixMarketError(reader.line_no() + 1, "missing size line");
  Tokens size_tok(line, reader.line_no());
  const long long rows = size_tok.integer("row count");
  const long long cols = size_tok.integer("column count");
  const long long nnz = size_tok.integer("entry count");
  size_tok.expect_end();
  if (rows != cols) throw MatrixMarketError(reader.line_no(), "matrix must be square");
  if (rows < 0 || nnz < 0) throw MatrixMarketError(reader.line_no(), "negative size");

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(nnz) * (h.symmetry == MmSymmetry::general ? 1 : 2));
  for (long long e = 0; e < nnz; ++e) {
    if (!reader.next_data(line))
      throw MatrixMarketError(reader.line_no() + 1, "expected " + std::to_string(nnz) + " entries, found " +
                                                        std::to_string(e));
    Tokens tok(line, reader.line_no());
    const long long i = tok.integer("row index");
    const long long j = tok.integer("column index");
    const Scalar v = read_value(tok, h.field);
    tok.expect_end();
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw MatrixMarketError(reader.line_no(), "index out of range");
    t.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), v});
    if (i != j) {
      switch (h.symmetry) {
        case MmSymmetry::general: break;
        case MmSymmetry::symmetric: t.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), v}); break;
        case MmSymmetry::skew: t.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), -v}); break;
        case MmSymmetry::hermitian:
          t.push_back({static_cast<Index>(j - 1), static_cast<Index>(i - 1), std::conj(v)});
          break;
      }
    }
  }
  if (reader.next_data(line)) throw MatrixMarketError(reader.line_no(), "more entries than declared");
  return CsrMatrix::from_triplets(static_cast<Index>(rows), std::move(t));
}

CsrMatrix read_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  const bool real = a.is_real();
  out << "%%MatrixMarket matrix coordinate " << (real ? "real" : "complex") << " general\n";
  out << a.dimension() << ' ' << a.dimension() << ' ' << a.nonzeros() << '\n';
  for (const auto& e : a.to_triplets()) {
    out << e.row + 1 << ' ' << e.col + 1 << ' ';
    write_value(out, e.value, real);
    out << '\n';
  }
}

void write_matrix_market(const std::string& path, const CsrMatrix& a) {
  auto out = open_out(path);
  write_matrix_market(out, a);
}

Matrix read_dense_matrix_market(std::istream& in) {
  LineReader reader(in);
  const Header h = parse_header(reader);
  if (h.format != MmFormat::array) throw MatrixMarketError(reader.line_no(), "expected array format");
  if (h.symmetry != MmSymmetry::general)
    throw MatrixMarketError(reader.line_no(), "only general array storage is supported");
  std::string line;
  if (!reader.next_data(line)) throw MatrixMarketError(reader.line_no() + 1, "missing size line");
  Tokens size_tok(line, reader.line_no());
  const long long rows = size_tok.integer("row count");
  const long long cols = size_tok.integer("column count");
  size_tok.expect_end();
  if (rows < 0 || cols < 0) throw MatrixMarketError(reader.line_no(), "negative size");
  Matrix a(rows, cols);
  for (long long j = 0; j < cols; ++j) {
    for (long long i = 0; i < rows; ++i) {
      if (!reader.next_data(line)) throw MatrixMarketError(reader.line_no() + 1, "too few array entries");
      Tokens tok(line, reader.line_no());
      a(i, j) = read_value(tok, h.field);
      tok.expect_end();
    }
  }
  if (reader.next_data(line)) throw MatrixMarketError(reader.line_no(), "more entries than declared");
  return a;
}

Matrix read_dense_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_dense_matrix_market(in);
}

void write_dense_matrix_market(std::ostream& out, const Matrix& a) {
  const bool real = is_real_valued(a);
  out << "%%MatrixMarket matrix array " << (real ? "real" : "complex") << " general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      write_value(out, a(i, j), real);
      out << '\n';
    }
}

void write_dense_matrix_market(const std::string& path, const Matrix& a) {
  auto out = open_out(path);
  write_dense_matrix_market(out, a);
}

}  // namespace defl
