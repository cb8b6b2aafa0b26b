#include "defl/arnoldi.hpp"

#include <algorithm>

namespace defl {

void ArnoldiFactorization::reserve(Index rows, Index cols) {
  if (v_.cols() < rows) {
    const Index cap = std::max(rows, 2 * v_.cols());
    v_.conservativeResize(Eigen::NoChange, cap);
  }
  if (h_.rows() < rows || h_.cols() < cols) {
    const Index r = std::max(rows, h_.rows());
    const Index c = std::max(cols, h_.cols());
    Matrix grown = Matrix::Zero(std::max(r, 2 * h_.rows()), std::max(c, 2 * h_.cols()));
    grown.topLeftCorner(h_.rows(), h_.cols()) = h_;
    h_.swap(grown);
  }
}

ArnoldiFactorization ArnoldiFactorization::from_start(const Matrix& q, Index capacity) {
  ArnoldiFactorization f;
  const Index cap = std::max(capacity, q.cols());
  f.v_.resize(q.rows(), cap);
  f.v_.leftCols(q.cols()) = q;
  f.h_ = Matrix::Zero(cap + q.cols(), cap);
  f.rows_ = q.cols();
  f.cols_ = 0;
  return f;
}

ArnoldiFactorization ArnoldiFactorization::from_recurrence(const Matrix& v, const Matrix& hbar,
                                                           Index capacity) {
  if (hbar.rows() != v.cols() || hbar.cols() > hbar.rows())
    throw Error("arnoldi: recurrence shapes inconsistent");
  ArnoldiFactorization f = from_start(v, std::max(capacity, v.cols()));
  f.reserve(v.cols(), hbar.cols());
  f.h_.topLeftCorner(hbar.rows(), hbar.cols()) = hbar;
  f.cols_ = hbar.cols();
  return f;
}

ArnoldiFactorization::Extension ArnoldiFactorization::extend(const LinearOperator& a, VectorOps& ops,
                                                             double breakdown_tol) {
  Extension ext;
  const Index width = frontier();
  if (width == 0) {
    invariant_ = true;
    return ext;
  }
  Matrix products;
  ops.apply_block(a, Matrix(v_.middleCols(cols_, width)), products);
  ext.matvecs = width;

  reserve(rows_ + width, cols_ + width);
  for (Index c = 0; c < width; ++c) {
    Vector w = products.col(c);
    const double reference = ops.norm(w);
    Vector coeff = Vector::Zero(rows_);
    for (int pass = 0; pass < 2; ++pass) {
      const Vector h = ops.inner(v_.leftCols(rows_), w);
      ops.combine_sub(v_.leftCols(rows_), h, w);
      coeff += h;
    }
    const double remaining = ops.norm(w);
    const Index col = cols_ + c;
    h_.col(col).head(rows_) = coeff;
    if (reference > 0.0 && remaining > breakdown_tol * reference) {
      ops.scale(w, 1.0 / remaining);
      v_.col(rows_) = w;
      h_(rows_, col) = remaining;
      ++rows_;
    } else {
      ++ext.dropped;
    }
  }
  cols_ += width;
  if (frontier() == 0) invariant_ = true;
  return ext;
}

double ArnoldiFactorization::recurrence_residual(const LinearOperator& a) const {
  if (cols_ == 0) return 0.0;
  Matrix av;
  a.apply_block(Matrix(v_.leftCols(cols_)), av);
  return (av - basis() * hbar()).norm();
}

double ArnoldiFactorization::orthogonality_error() const {
  const Matrix g = basis().adjoint() * basis();
  return (g - Matrix::Identity(rows_, rows_)).cwiseAbs().maxCoeff();
}

ArnoldiFactorization arnoldi_extend(const LinearOperator& a, ArnoldiFactorization fact, Index steps,
                                    VectorOps& ops) {
  for (Index s = 0; s < steps && !fact.invariant(); ++s) fact.extend(a, ops);
  return fact;
}

}  // namespace defl
