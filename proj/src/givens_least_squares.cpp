#include "defl/givens_least_squares.hpp"

#include <cmath>

namespace defl {

GivensLeastSquares::GivensLeastSquares(const Matrix& rhs) : r_(rhs.rows(), 0), g_(rhs) {}

void GivensLeastSquares::add_rows(Index count) {
  if (count <= 0) return;
  const Index old = g_.rows();
  g_.conservativeResize(old + count, Eigen::NoChange);
  g_.bottomRows(count).setZero();
  r_.conservativeResize(old + count, Eigen::NoChange);
  r_.bottomRows(count).setZero();
}

void GivensLeastSquares::apply(const Rotation& rot, Scalar& x, Scalar& y) {
  const Scalar a = x;
  const Scalar b = y;
  x = rot.c * a + rot.s * b;
  y = -std::conj(rot.s) * a + rot.c * b;
}

Index GivensLeastSquares::add_column(const Eigen::Ref<const Vector>& column) {
  if (column.size() > rows()) throw Error("givens: column longer than row space");
  if (cols_ >= rows()) throw Error("givens: no free row for a new column");
  Vector h = Vector::Zero(rows());
  h.head(column.size()) = column;

  for (const auto& rot : rotations_) apply(rot, h(rot.row), h(rot.row + 1));

  Index last = rows() - 1;
  while (last > cols_ && h(last) == Scalar(0)) --last;
  Index generated = 0;
  for (Index i = last; i > cols_; --i) {
    const Scalar a = h(i - 1);
    const Scalar b = h(i);
    if (b == Scalar(0)) continue;
    Rotation rot{i - 1, 0.0, 1.0};
    const double abs_a = std::abs(a);
    const double rho = std::hypot(abs_a, std::abs(b));
    if (abs_a == 0.0) {
      rot.c = 0.0;
      rot.s = 1.0;
    } else {
      rot.c = abs_a / rho;
      rot.s = (a / abs_a) * std::conj(b) / rho;
    }
    apply(rot, h(i - 1), h(i));
    h(i) = 0.0;
    for (Index k = 0; k < g_.cols(); ++k) apply(rot, g_(i - 1, k), g_(i, k));
    rotations_.push_back(rot);
    ++generated;
  }
  r_.conservativeResize(Eigen::NoChange, cols_ + 1);
  r_.col(cols_) = h;
  ++cols_;
  return generated;
}

RealVector GivensLeastSquares::residual_norms() const {
  RealVector out(g_.cols());
  for (Index k = 0; k < g_.cols(); ++k) out(k) = g_.col(k).tail(rows() - cols_).norm();
  return out;
}

Matrix GivensLeastSquares::solve() const {
  Matrix d = g_.topRows(cols_);
  if (cols_ == 0) return d;
  r_.topLeftCorner(cols_, cols_).triangularView<Eigen::Upper>().solveInPlace(d);
  return d;
}

double GivensLeastSquares::diagonal_ratio() const {
  if (cols_ == 0) return 1.0;
  double lo = std::abs(r_(0, 0));
  double hi = lo;
  for (Index i = 1; i < cols_; ++i) {
    lo = std::min(lo, std::abs(r_(i, i)));
    hi = std::max(hi, std::abs(r_(i, i)));
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

}  // namespace defl
