#include "defl/basis_io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "defl/matrix_market.hpp"

namespace defl {

namespace fs = std::filesystem;
using nlohmann::json;

std::string checksum_hex(std::uint64_t value) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << value;
  return s.str();
}

namespace {

std::uint64_t parse_checksum(const std::string& hex) {
  std::size_t used = 0;
  const auto v = std::stoull(hex, &used, 16);
  if (used != hex.size()) throw Error("basis header: malformed checksum '" + hex + "'");
  return v;
}

json complex_array(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector complex_vector(const json& j) {
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = Scalar(j[i][0].get<double>(), j[i][1].get<double>());
  return v;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void check_matrix(const json& header, const CsrMatrix& matrix, const std::string& what) {
  const auto stored = parse_checksum(header.at("matrix_checksum").get<std::string>());
  if (stored != matrix.checksum() || header.at("n").get<Index>() != matrix.dimension())
    throw Error(what + " was computed for a different matrix (checksum " + checksum_hex(stored) + ", matrix has " +
                checksum_hex(matrix.checksum()) + ")");
}

}  // namespace

void export_basis(const std::string& dir, const DeflationBasis& basis, const CsrMatrix& matrix) {
  if (basis.dimension() != matrix.dimension()) throw Error("export basis: dimension does not match matrix");
  fs::create_directories(dir);
  const fs::path root(dir);
  write_dense_matrix_market((root / "V.mtx").string(), basis.v);
  write_dense_matrix_market((root / "H.mtx").string(), basis.hbar);
  const bool real = matrix.is_real() && is_real_valued(basis.v) && is_real_valued(basis.hbar);
  json header{{"n", basis.dimension()},
              {"k", basis.k()},
              {"rows", basis.rows()},
              {"field", to_string(real ? Field::real : Field::complex)},
              {"matrix_checksum", checksum_hex(matrix.checksum())},
              {"harmonic_values", complex_array(basis.harmonic_values)}};
  write_json(root / "header.json", header);
}

DeflationBasis read_basis(const std::string& dir, BasisHeader* header_out) {
  const fs::path root(dir);
  const json header = read_json(root / "header.json");
  DeflationBasis basis;
  basis.v = read_dense_matrix_market((root / "V.mtx").string());
  basis.hbar = read_dense_matrix_market((root / "H.mtx").string());
  basis.harmonic_values = complex_vector(header.at("harmonic_values"));
  if (basis.dimension() != header.at("n").get<Index>() || basis.k() != header.at("k").get<Index>() ||
      basis.rows() != header.at("rows").get<Index>())
    throw Error("basis: header shape does not match stored matrices");
  basis.validate();
  if (header_out) {
    header_out->n = basis.dimension();
    header_out->k = basis.k();
    header_out->rows = basis.rows();
    header_out->field = header.at("field").get<std::string>() == "real" ? Field::real : Field::complex;
    header_out->matrix_checksum = parse_checksum(header.at("matrix_checksum").get<std::string>());
    header_out->harmonic_values = basis.harmonic_values;
  }
  return basis;
}

DeflationBasis import_basis(const std::string& dir, const CsrMatrix& matrix) {
  check_matrix(read_json(fs::path(dir) / "header.json"), matrix, "basis");
  return read_basis(dir);
}

void export_left_right(const std::string& dir, const LeftRightBasis& basis, const CsrMatrix& matrix) {
  fs::create_directories(dir);
  const fs::path root(dir);
  write_dense_matrix_market((root / "V.mtx").string(), basis.v());
  write_dense_matrix_market((root / "W.mtx").string(), basis.w());
  write_dense_matrix_market((root / "AV.mtx").string(), basis.av());
  write_dense_matrix_market((root / "M.mtx").string(), basis.m());
  json header{{"n", basis.v().rows()},
              {"k", basis.k()},
              {"matrix_checksum", checksum_hex(matrix.checksum())},
              {"condition", basis.condition()}};
  write_json(root / "header.json", header);
}

LeftRightBasis import_left_right(const std::string& dir, const CsrMatrix& matrix) {
  const fs::path root(dir);
  check_matrix(read_json(root / "header.json"), matrix, "left-right basis");
  return LeftRightBasis::from_parts(read_dense_matrix_market((root / "V.mtx").string()),
                                    read_dense_matrix_market((root / "W.mtx").string()),
                                    read_dense_matrix_market((root / "AV.mtx").string()));
}

}  // namespace defl
