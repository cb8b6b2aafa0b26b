#pragma once

#include <atomic>

#include "defl/csr_matrix.hpp"
#include "defl/types.hpp"

namespace defl {

/// Square linear map with adjoint access. Every apply or apply_adjoint
/// call increments the operator's own application counter by one.
/// Application is const and safe to call concurrently.
class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(const LinearOperator&) = delete;
  LinearOperator& operator=(const LinearOperator&) = delete;
  virtual ~LinearOperator() = default;

  virtual Index dimension() const = 0;
  /// Stored nonzeros, used by the flop model.
  virtual Index nonzeros() const = 0;
  virtual bool is_real() const = 0;

  void apply(const Vector& x, Vector& y) const {
    applications_.fetch_add(1, std::memory_order_relaxed);
    do_apply(x, y);
  }
  void apply_adjoint(const Vector& x, Vector& y) const {
    applications_.fetch_add(1, std::memory_order_relaxed);
    do_apply_adjoint(x, y);
  }
  /// Applies to each column; counts one application per column.
  void apply_block(const Matrix& x, Matrix& y) const;

  Count applications() const { return applications_.load(std::memory_order_relaxed); }
  void reset_applications() const { applications_.store(0, std::memory_order_relaxed); }

 protected:
  virtual void do_apply(const Vector& x, Vector& y) const = 0;
  virtual void do_apply_adjoint(const Vector& x, Vector& y) const = 0;

 private:
  mutable std::atomic<Count> applications_{0};
};

class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(CsrMatrix matrix) : matrix_(std::move(matrix)), real_(matrix_.is_real()) {}

  Index dimension() const override { return matrix_.dimension(); }
  Index nonzeros() const override { return matrix_.nonzeros(); }
  bool is_real() const override { return real_; }
  const CsrMatrix& matrix() const { return matrix_; }

 protected:
  void do_apply(const Vector& x, Vector& y) const override { matrix_.multiply(x, y); }
  void do_apply_adjoint(const Vector& x, Vector& y) const override { matrix_.multiply_adjoint(x, y); }

 private:
  CsrMatrix matrix_;
  bool real_;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Matrix matrix);

  Index dimension() const override { return matrix_.rows(); }
  Index nonzeros() const override { return matrix_.rows() * matrix_.cols(); }
  bool is_real() const override { return real_; }
  const Matrix& matrix() const { return matrix_; }

 protected:
  void do_apply(const Vector& x, Vector& y) const override { y.noalias() = matrix_ * x; }
  void do_apply_adjoint(const Vector& x, Vector& y) const override {
    y.noalias() = matrix_.adjoint() * x;
  }

 private:
  Matrix matrix_;
  bool real_;
};

/// View of A^H over an existing operator. Applications are forwarded, so
/// they are counted both here and on the wrapped operator.
class AdjointOperator final : public LinearOperator {
 public:
  explicit AdjointOperator(const LinearOperator& base) : base_(base) {}

  Index dimension() const override { return base_.dimension(); }
  Index nonzeros() const override { return base_.nonzeros(); }
  bool is_real() const override { return base_.is_real(); }

 protected:
  void do_apply(const Vector& x, Vector& y) const override { base_.apply_adjoint(x, y); }
  void do_apply_adjoint(const Vector& x, Vector& y) const override { base_.apply(x, y); }

 private:
  const LinearOperator& base_;
};

}  // namespace defl
