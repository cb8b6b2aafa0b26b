#pragma once

#include "defl/types.hpp"

namespace defl {

/// Declared cost model. A length-n vector operation (dot, axpy, scale,
/// norm) costs 8n flops for complex data and 2n for real data; a matvec
/// costs 8 nnz or 2 nnz. Small dense work is charged by the caller with
/// the helpers below.
struct CostModel {
  Field field = Field::complex;
  Index n = 0;
  Index nnz = 0;

  Count per_entry() const { return field == Field::real ? 2 : 8; }
  Count vector_op_cost() const { return per_entry() * n; }
  Count matvec_cost() const { return per_entry() * nnz; }
  /// multiply-add count r*c*d of a small dense product, scaled by field
  Count small_product(Index r, Index c, Index d) const { return per_entry() * r * c * d; }
};

/// Per-solve accounting. All counters only grow.
class CostLedger {
 public:
  CostLedger() = default;
  explicit CostLedger(CostModel model) : model_(model) {}

  void record_matvecs(Count count = 1) {
    matvecs_ += count;
    flops_ += count * model_.matvec_cost();
  }
  void record_vector_ops(Count count = 1) {
    vector_ops_ += count;
    flops_ += count * model_.vector_op_cost();
  }
  void record_small_dense(Count flops) {
    small_dense_flops_ += flops;
    flops_ += flops;
  }

  const CostModel& model() const { return model_; }
  Count matvecs() const { return matvecs_; }
  Count vector_ops() const { return vector_ops_; }
  Count small_dense_flops() const { return small_dense_flops_; }
  Count flops() const { return flops_; }

  /// Recomputes total flops from the primitive counts.
  Count declared_flops() const {
    return matvecs_ * model_.matvec_cost() + vector_ops_ * model_.vector_op_cost() +
           small_dense_flops_;
  }

  CostLedger& operator+=(const CostLedger& other);

 private:
  CostModel model_;
  Count matvecs_ = 0;
  Count vector_ops_ = 0;
  Count small_dense_flops_ = 0;
  Count flops_ = 0;
};

}  // namespace defl
