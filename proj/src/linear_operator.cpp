#include "defl/linear_operator.hpp"

namespace defl {

void LinearOperator::apply_block(const Matrix& x, Matrix& y) const {
  y.resize(x.rows(), x.cols());
  Vector in, out;
  for (Index j = 0; j < x.cols(); ++j) {
    in = x.col(j);
    apply(in, out);
    y.col(j) = out;
  }
}

DenseOperator::DenseOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw Error("dense operator must be square");
  real_ = is_real_valued(matrix_);
}

}  // namespace defl
