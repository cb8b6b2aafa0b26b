#include <gtest/gtest.h>

#include "defl/arnoldi.hpp"
#include "defl/generators.hpp"
#include "defl/gmres.hpp"
#include "oracles.hpp"

using namespace defl;
using defl::oracle::Gen;

TEST(Arnoldi, RecurrenceAndOrthonormality) {
  Gen g(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = g.integer(20, 50);
    const Index p = g.integer(1, 3);
    DenseOperator a(g.matrix(n, n, trial % 2 == 0));
    CostLedger ledger(cost_model_for(a, false));
    VectorOps ops(ledger);
    auto fact = ArnoldiFactorization::from_start(oracle::orth(g.matrix(n, p)));
    fact = arnoldi_extend(a, std::move(fact), 5, ops);
    EXPECT_EQ(fact.cols(), 5 * p);
    EXPECT_EQ(fact.rows(), 6 * p);
    EXPECT_EQ(ledger.matvecs(), 5 * p);
    EXPECT_LT(fact.recurrence_residual(a), 1e-12 * n);
    EXPECT_LT(fact.orthogonality_error(), 1e-13);
    // Hbar is block upper Hessenberg: nothing below the p-th subdiagonal.
    const Matrix h = fact.hbar();
    for (Index j = 0; j < h.cols(); ++j)
      for (Index i = j + p + 1; i < h.rows(); ++i) EXPECT_EQ(h(i, j), Scalar(0.0));
  }
}

TEST(Arnoldi, InvariantSubspaceIsDetected) {
  // e_1 under a diagonal matrix spans an invariant subspace of size 1.
  Matrix d = Matrix::Zero(6, 6);
  for (Index i = 0; i < 6; ++i) d(i, i) = double(i + 1);
  DenseOperator a(d);
  CostLedger ledger;
  VectorOps ops(ledger);
  auto fact = ArnoldiFactorization::from_start(Matrix::Identity(6, 1));
  const auto ext = fact.extend(a, ops);
  EXPECT_EQ(ext.dropped, 1);
  EXPECT_TRUE(fact.invariant());
}

TEST(GmresCycle, MatchesDenseLeastSquaresOverKrylovSpace) {
  Gen g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = g.integer(10, 60);
    const Index m = g.integer(2, std::min<Index>(12, n - 1));
    const bool complex = trial % 2 == 0;
    const Matrix am = g.matrix(n, n, complex) + 4.0 * Matrix::Identity(n, n);
    DenseOperator a(am);
    const Vector b = g.vector(n, complex);
    const Vector x0 = g.vector(n, complex) * 0.1;
    const auto cyc = gmres_cycle(a, x0, b, m);
    const Vector ref = oracle::dense_minres(am, x0, b, oracle::krylov_basis(am, b - am * x0, m));
    EXPECT_LT((cyc.x_new - ref).norm(), 1e-8 * ref.norm()) << "n=" << n << " m=" << m;
    EXPECT_NEAR(cyc.residual_norm, (b - am * cyc.x_new).norm(), 1e-10 * b.norm());
    EXPECT_EQ(cyc.ledger.matvecs(), m + 1);  // x0 != 0 costs one product for r0
  }
}

TEST(GmresCycle, ResidualHistoryIsNonincreasing) {
  Gen g(23);
  const Index n = 40;
  DenseOperator a(g.matrix(n, n) + 2.0 * Matrix::Identity(n, n));
  const auto cyc = gmres_cycle(a, Vector::Zero(n), g.vector(n), 20);
  for (std::size_t i = 1; i < cyc.residual_history.size(); ++i)
    EXPECT_LE(cyc.residual_history[i], cyc.residual_history[i - 1] * (1 + 1e-12));
}

TEST(GmresRestarted, IdentityTakesOneMatvec) {
  CsrOperator a(CsrMatrix::identity(10));
  const auto res = gmres_restarted(a, Vector::Zero(10), Vector::Ones(10), 5, 1e-8, 100);
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.matvecs(), 1);
  EXPECT_LT((res.x - Vector::Ones(10)).norm(), 1e-14);
}

TEST(GmresRestarted, BudgetIsRespectedAndFlagged) {
  CsrOperator a(make_bidiagonal(200));
  const Vector b = make_rhs(200, rhs::RandomNormal{}, 1);
  const auto res = gmres_restarted(a, Vector::Zero(200), b, 15, 1e-10, 37);
  EXPECT_FALSE(res.report.converged);
  EXPECT_LE(res.report.matvecs(), 37);
  EXPECT_TRUE(res.report.has_flag("budget_exhausted"));
  // The returned iterate is the best one found so far.
  Vector ax;
  a.apply(res.x, ax);
  EXPECT_NEAR((b - ax).norm(), res.report.final_norms[0], 1e-8 * b.norm());
}

TEST(GmresRestarted, ConvergesAndCountsOnlySolverProducts) {
  CsrOperator a(make_bidiagonal(100));
  const Vector b = make_rhs(100, rhs::RandomNormal{}, 2);
  const auto res = gmres_restarted(a, Vector::Zero(100), b, 30, 1e-8, 10000);
  ASSERT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.ledger.flops(), res.report.ledger.declared_flops());
  EXPECT_GE(res.report.verification_matvecs, 1);
  EXPECT_EQ(res.report.history.back().matvec, res.report.matvecs());
  Vector ax;
  a.apply(res.x, ax);
  EXPECT_LE((b - ax).norm(), 1e-8 * b.norm() * (1 + 1e-6));
}
