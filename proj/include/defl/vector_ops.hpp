#pragma once

#include "defl/cost_ledger.hpp"
#include "defl/linear_operator.hpp"

namespace defl {

/// Length-n kernels that charge a CostLedger. Block forms are charged as
/// the equivalent number of single-vector dots and axpys.
class VectorOps {
 public:
  explicit VectorOps(CostLedger& ledger) : ledger_(ledger) {}

  CostLedger& ledger() { return ledger_; }

  Scalar dot(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y) {
    ledger_.record_vector_ops();
    return x.dot(y);
  }
  double norm(const Eigen::Ref<const Vector>& x) {
    ledger_.record_vector_ops();
    return x.norm();
  }
  void axpy(Scalar a, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
    ledger_.record_vector_ops();
    y.noalias() += a * x;
  }
  void scale(Eigen::Ref<Vector> x, Scalar a) {
    ledger_.record_vector_ops();
    x *= a;
  }

  /// V^H X: one dot per (column of V, column of X) pair.
  Matrix inner(const Eigen::Ref<const Matrix>& v, const Eigen::Ref<const Matrix>& x) {
    ledger_.record_vector_ops(v.cols() * x.cols());
    return v.adjoint() * x;
  }
  /// Y += V C: one axpy per nonzero-capable entry of C.
  void combine_add(const Eigen::Ref<const Matrix>& v, const Eigen::Ref<const Matrix>& c,
                   Eigen::Ref<Matrix> y) {
    ledger_.record_vector_ops(c.rows() * c.cols());
    y.noalias() += v * c;
  }
  void combine_sub(const Eigen::Ref<const Matrix>& v, const Eigen::Ref<const Matrix>& c,
                   Eigen::Ref<Matrix> y) {
    ledger_.record_vector_ops(c.rows() * c.cols());
    y.noalias() -= v * c;
  }
  /// Returns V C as a new block.
  Matrix combine(const Eigen::Ref<const Matrix>& v, const Eigen::Ref<const Matrix>& c) {
    ledger_.record_vector_ops(c.rows() * c.cols());
    return v * c;
  }

  void apply(const LinearOperator& a, const Vector& x, Vector& y) {
    ledger_.record_matvecs();
    a.apply(x, y);
  }
  void apply_block(const LinearOperator& a, const Matrix& x, Matrix& y) {
    ledger_.record_matvecs(x.cols());
    a.apply_block(x, y);
  }

 private:
  CostLedger& ledger_;
};

inline CostModel cost_model_for(const LinearOperator& a, bool rhs_real) {
  return CostModel{a.is_real() && rhs_real ? Field::real : Field::complex, a.dimension(),
                   a.nonzeros()};
}

}  // namespace defl
