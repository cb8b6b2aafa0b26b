#include "defl/csr_matrix.hpp"

#include <algorithm>
#include <cstring>

namespace defl {

CsrMatrix::CsrMatrix(Index n, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                     std::vector<Scalar> values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
  validate();
}

void CsrMatrix::validate() const {
  if (n_ < 0) throw Error("csr: negative dimension");
  if (static_cast<Index>(row_ptr_.size()) != n_ + 1) throw Error("csr: row_ptr must have n+1 entries");
  if (row_ptr_.front() != 0) throw Error("csr: row_ptr must start at 0");
  if (col_idx_.size() != values_.size()) throw Error("csr: col_idx/values length mismatch");
  if (row_ptr_.back() != static_cast<Index>(values_.size()))
    throw Error("csr: row_ptr end does not match nonzero count");
  for (Index i = 0; i < n_; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) throw Error("csr: row_ptr must be nondecreasing");
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_idx_[p] < 0 || col_idx_[p] >= n_)
        throw Error("csr: column index out of range in row " + std::to_string(i));
      if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1])
        throw Error("csr: column indices must be strictly increasing in row " + std::to_string(i));
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(Index n, std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw Error("csr: triplet index out of range");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Index> row_ptr(n + 1, 0);
  std::vector<Index> col_idx;
  std::vector<Scalar> values;
  col_idx.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t t = 0; t < triplets.size(); ++t) {
    const auto& e = triplets[t];
    if (t > 0 && triplets[t - 1].row == e.row && triplets[t - 1].col == e.col) {
      values.back() += e.value;
      continue;
    }
    col_idx.push_back(e.col);
    values.push_back(e.value);
    ++row_ptr[e.row + 1];
  }
  for (Index i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix CsrMatrix::from_dense(const Matrix& dense, double drop) {
  if (dense.rows() != dense.cols()) throw Error("csr: dense input must be square");
  std::vector<Triplet> t;
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j)
      if (std::abs(dense(i, j)) > drop) t.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), std::move(t));
}

CsrMatrix CsrMatrix::identity(Index n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, std::move(t));
}

bool CsrMatrix::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const Scalar& v) { return v.imag() == 0.0; });
}

Matrix CsrMatrix::to_dense() const {
  Matrix d = Matrix::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) = values_[p];
  return d;
}

std::vector<Triplet> CsrMatrix::to_triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) t.push_back({i, col_idx_[p], values_[p]});
  return t;
}

void CsrMatrix::multiply(const Vector& x, Vector& y) const {
  if (x.size() != n_) throw Error("csr: dimension mismatch in multiply");
  y.resize(n_);
  for (Index i = 0; i < n_; ++i) {
    Scalar sum = 0.0;
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) sum += values_[p] * x[col_idx_[p]];
    y[i] = sum;
  }
}

void CsrMatrix::multiply_adjoint(const Vector& x, Vector& y) const {
  if (x.size() != n_) throw Error("csr: dimension mismatch in multiply_adjoint");
  y.setZero(n_);
  for (Index i = 0; i < n_; ++i)
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      y[col_idx_[p]] += std::conj(values_[p]) * x[i];
}

CsrMatrix CsrMatrix::adjoint() const {
  auto t = to_triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return from_triplets(n_, std::move(t));
}

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_double(std::uint64_t& h, double v) {
  if (v == 0.0) v = 0.0;  // fold -0.0
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  fnv_mix(h, &bits, sizeof bits);
}

}  // namespace

std::uint64_t CsrMatrix::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::int64_t n = n_;
  fnv_mix(h, &n, sizeof n);
  for (Index v : row_ptr_) {
    const std::int64_t w = v;
    fnv_mix(h, &w, sizeof w);
  }
  for (Index v : col_idx_) {
    const std::int64_t w = v;
    fnv_mix(h, &w, sizeof w);
  }
  for (const auto& v : values_) {
    fnv_double(h, v.real());
    fnv_double(h, v.imag());
  }
  return h;
}

}  // namespace defl
