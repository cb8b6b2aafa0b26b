#include <gtest/gtest.h>

#include "defl/block_gmres.hpp"
#include "defl/generators.hpp"
#include "defl/gmres.hpp"
#include "defl/multirhs.hpp"
#include "oracles.hpp"

using namespace defl;
using defl::oracle::Gen;

TEST(BlockGmres, BlockSizeOneMatchesGmresDr) {
  CsrOperator a(make_bidiagonal(300));
  const Vector b = make_rhs(300, rhs::RandomNormal{}, 3);
  const auto single = gmres_dr_solve(a, b, GmresDrConfig{20, 6, 1e-8, 100000});
  const auto block = block_gmres_dr_solve(a, Matrix(b), BlockDrConfig{20, 1, 6, 1e-8, 100000});
  EXPECT_EQ(block.report.matvecs(), single.report.matvecs());
  EXPECT_LT((block.x.col(0) - single.x).norm(), 1e-10 * single.x.norm());
  ASSERT_EQ(block.report.history.size(), single.report.history.size());
  for (std::size_t i = 0; i < single.report.history.size(); ++i)
    EXPECT_NEAR(block.report.history[i].residual_norm, single.report.history[i].residual_norm, 1e-10 * b.norm());
}

TEST(BlockGmres, BlockSizeOneProjMatchesGmresProj) {
  CsrOperator a(make_bidiagonal(300));
  const auto first = gmres_dr_solve(a, make_rhs(300, rhs::RandomNormal{}, 3), GmresDrConfig{20, 6, 1e-8, 100000});
  const Vector b = make_rhs(300, rhs::RandomNormal{}, 4);
  MultiRhsSession session(a, first.basis);
  const auto single = gmres_proj_solve(session, b, GmresProjConfig{15, 6, {1, 1}, 1e-6, 100000});
  const auto block = bl_gmres_proj_solve(a, first.basis, Matrix(b), 15, 6, 1e-6, 100000);
  EXPECT_EQ(block.report.matvecs(), single.report.matvecs());
  EXPECT_LT((block.x.col(0) - single.x).norm(), 1e-10 * single.x.norm());
}

TEST(BlockGmres, CycleMatchesDenseBlockLeastSquares) {
  Gen g(71);
  const Index n = 80, p = 2, steps = 6;
  const Matrix am = g.matrix(n, n) + 5.0 * Matrix::Identity(n, n);
  DenseOperator a(am);
  const Matrix b = g.matrix(n, p);
  CostLedger setup;
  VectorOps ops(setup);
  const DeflationBasis empty;
  const auto res = bl_gmres_proj_solve(a, empty, b, steps * p, 0, 1e-14, steps * p);
  // Block Krylov space span{B, A B, ..., A^{steps-1} B}.
  Matrix span(n, steps * p);
  Matrix blk = b;
  for (Index s = 0; s < steps; ++s) {
    span.middleCols(s * p, p) = blk;
    blk = am * oracle::orth(blk);
  }
  const Matrix ref = oracle::dense_block_minres(am, Matrix::Zero(n, p), b, oracle::orth(span));
  EXPECT_LT((res.x - ref).norm(), 1e-8 * ref.norm());
  EXPECT_EQ(res.report.matvecs(), steps * p);
}

TEST(BlockGmres, IdenticalColumnsDeflateTheBlock) {
  CsrOperator a(make_bidiagonal(100));
  const Vector b = make_rhs(100, rhs::RandomNormal{}, 5);
  Matrix bb(100, 3);
  bb << b, b, b;
  const auto res = block_gmres_dr_solve(a, bb, BlockDrConfig{30, 3, 5, 1e-8, 100000});
  EXPECT_TRUE(res.report.has_flag("block_column_deflated"));
  EXPECT_TRUE(res.report.converged);
  EXPECT_LT((res.x.col(0) - res.x.col(2)).norm(), 1e-8 * res.x.col(0).norm());
}

TEST(BlockGmres, OrthonormalBasisAndRecurrence) {
  CsrOperator a(make_bidiagonal(400));
  Matrix b(400, 4);
  for (Index j = 0; j < 4; ++j) b.col(j) = make_rhs(400, rhs::RandomNormal{}, 10 + j);
  const auto res = block_gmres_dr_solve(a, b, BlockDrConfig{60, 4, 8, 1e-8, 100000});
  ASSERT_TRUE(res.report.converged);
  EXPECT_EQ(res.basis.k(), 8);
  EXPECT_EQ(res.basis.rows(), 12);
  EXPECT_LT(res.basis.orthogonality_error(), 1e-10);
  EXPECT_LT(res.basis.recurrence_residual(a), 1e-8);
  EXPECT_EQ(res.report.matvecs() % 4, 0);
}

TEST(BlockGmres, RejectsTooFewDirectionsPerRightHandSide) {
  EXPECT_THROW(validate_block_config(170, 200, 10), Error);
  EXPECT_NO_THROW(validate_block_config(170, 20, 10));
  try {
    validate_block_config(30, 25, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not enough"), std::string::npos);
  }
}

TEST(BlockGmres, GroupsReuseTheFirstBasis) {
  CsrOperator a(make_bidiagonal(300));
  Matrix b(300, 7);
  for (Index j = 0; j < 7; ++j) b.col(j) = make_rhs(300, rhs::RandomNormal{}, 20 + j);
  const auto run = solve_in_groups(a, b, BlockGroupConfig{BlockDrConfig{60, 3, 8, 1e-6, 100000}, 50, 100000});
  ASSERT_EQ(run.groups.size(), 3u);
  EXPECT_TRUE(run.all_converged);
  EXPECT_EQ(run.groups[2].x.cols(), 1);
  Count sum = 0;
  for (const auto& gr : run.groups) sum += gr.report.matvecs();
  EXPECT_EQ(sum, run.total_matvecs);
}
