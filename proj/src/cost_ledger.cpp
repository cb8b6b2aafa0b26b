#include "defl/cost_ledger.hpp"

namespace defl {

CostLedger& CostLedger::operator+=(const CostLedger& other) {
  if (model_.n == 0) model_ = other.model_;
  matvecs_ += other.matvecs_;
  vector_ops_ += other.vector_ops_;
  small_dense_flops_ += other.small_dense_flops_;
  flops_ += other.flops_;
  return *this;
}

}  // namespace defl
