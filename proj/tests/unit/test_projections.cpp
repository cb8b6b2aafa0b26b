#include <gtest/gtest.h>

#include "checks.hpp"
#include "defl/generators.hpp"
#include "defl/gmres_dr.hpp"
#include "defl/projections.hpp"
#include "oracles.hpp"

using namespace defl;
using defl::oracle::Gen;

TEST(Theorems, MinresComponentFormula) {
  const auto c = oracle::minres_component_check(100, 41);
  EXPECT_EQ(c.instances, 100);
  EXPECT_LT(c.worst, 1e-10);
}

TEST(Theorems, LeftRightComponentFormula) {
  const auto c = oracle::left_right_component_check(100, 42);
  EXPECT_LT(c.worst, 1e-10);
}

TEST(Theorems, ExactLeftRightPairZeroesComponent) {
  const auto c = oracle::exact_pair_zeroing_check(100, 43);
  EXPECT_LT(c.worst, 1e-10);
}

TEST(MinresProject, MatchesDenseProjection) {
  const auto c = oracle::minres_project_check(50, 44);
  EXPECT_LT(c.worst, 1e-10);
}

TEST(MinresProject, CostsThreeKPlusTwoVectorOps) {
  // The compact recurrence from GMRES-DR has k + 1 rows.
  Gen g(45);
  const Index n = 200;
  CsrOperator a(make_bidiagonal(n));
  for (const Index k : {1, 4, 10}) {
    const DeflationBasis basis = gmres_dr_solve(a, g.vector(n), GmresDrConfig{20, k, 1e-8, 2000}).basis;
    ASSERT_EQ(basis.rows(), k + 1);
    const Vector r0 = g.vector(n);
    CostLedger l;
    VectorOps ops(l);
    const auto res = minres_project(basis, Vector::Zero(n), r0, ops, r0.norm());
    EXPECT_EQ(l.matvecs(), 0);
    EXPECT_EQ(l.vector_ops(), 3 * k + 2);
    EXPECT_NEAR(res.residual_norm_after, res.r_new.norm(), 1e-12 * r0.norm());
  }
}

TEST(MinresProject, NeverIncreasesResidual) {
  Gen g(46);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(10, 40);
    DenseOperator a(g.matrix(n, n));
    CostLedger l;
    VectorOps ops(l);
    const auto basis = deflation_basis_from_subspace(a, g.matrix(n, g.integer(1, 5)), ops);
    const Vector r0 = g.vector(n);
    const auto res = minres_project(basis, Vector::Zero(n), r0, ops);
    EXPECT_LE(res.residual_norm_after, r0.norm() * (1 + 1e-12));
    // Residual is orthogonal to A V.
    EXPECT_LT((basis.hbar.adjoint() * (basis.v.adjoint() * res.r_new)).norm(), 1e-10 * r0.norm());
  }
}

TEST(MinresProject, NormIdentityFallsBackUnderCancellation) {
  // r0 almost entirely inside A V: the identity would cancel badly.
  Gen g(47);
  const Index n = 30;
  const Matrix am = g.matrix(n, n) + 3.0 * Matrix::Identity(n, n);
  DenseOperator a(am);
  CostLedger l;
  VectorOps ops(l);
  const Matrix s = g.matrix(n, 3);
  const auto basis = deflation_basis_from_subspace(a, s, ops);
  const Vector r0 = am * s.col(0) + 1e-9 * g.vector(n);
  const auto res = minres_project(basis, Vector::Zero(n), r0, ops, r0.norm());
  EXPECT_NEAR(res.residual_norm_after, res.r_new.norm(), 1e-6 * res.r_new.norm());
}

TEST(MinresProject, BlockVersionMatchesColumns) {
  Gen g(48);
  const Index n = 30;
  DenseOperator a(g.matrix(n, n) + 3.0 * Matrix::Identity(n, n));
  CostLedger l;
  VectorOps ops(l);
  const auto basis = deflation_basis_from_subspace(a, g.matrix(n, 4), ops);
  const Matrix x0 = g.matrix(n, 3);
  const Matrix r0 = g.matrix(n, 3);
  const auto block = minres_project_block(basis, x0, r0, ops, r0.colwise().norm().transpose());
  for (Index c = 0; c < 3; ++c) {
    const auto single = minres_project(basis, x0.col(c), r0.col(c), ops);
    EXPECT_LT((block.x_new.col(c) - single.x_new).norm(), 1e-12 * single.x_new.norm());
    EXPECT_NEAR(block.norms_after(c), single.residual_norm_after, 1e-10 * r0.col(c).norm());
  }
}

TEST(LrProject, MatchesDensePetrovGalerkin) {
  Gen g(49);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(8, 40);
    const Index k = g.integer(1, 6);
    const Matrix am = g.matrix(n, n) + 3.0 * Matrix::Identity(n, n);
    DenseOperator a(am);
    CostLedger l;
    VectorOps ops(l);
    const Matrix v = g.matrix(n, k);
    const Matrix w = g.matrix(n, k);
    const auto lr = LeftRightBasis::from_vectors(a, v, w, ops);
    EXPECT_EQ(l.matvecs(), k);
    const Vector x0 = g.vector(n);
    const Vector r0 = g.vector(n);
    const auto res = lr_project(lr, x0, r0, ops);
    const Vector ref = oracle::dense_petrov_galerkin(am, x0, r0, v, w);
    EXPECT_LT((res.x_new - ref).norm(), 1e-9 * ref.norm());
    EXPECT_LT((res.r_new - (r0 - am * (ref - x0))).norm(), 1e-9 * r0.norm());
    EXPECT_LT((lr.w().adjoint() * res.r_new).norm(), 1e-10 * r0.norm());
  }
}

TEST(LrProject, FromDeflationCostsNoMatvecs) {
  Gen g(50);
  const Index n = 30;
  const Matrix am = g.matrix(n, n) + 3.0 * Matrix::Identity(n, n);
  DenseOperator a(am);
  CostLedger setup;
  VectorOps setup_ops(setup);
  const auto basis = deflation_basis_from_subspace(a, g.matrix(n, 4), setup_ops);
  const Count before = a.applications();
  CostLedger l;
  VectorOps ops(l);
  const auto lr = LeftRightBasis::from_deflation(basis, oracle::orth(g.matrix(n, 4)), ops);
  EXPECT_EQ(a.applications(), before);
  EXPECT_LT((lr.av() - am * lr.v()).norm(), 1e-10 * am.norm());
}

TEST(LrProject, IllConditionedPairingIsRejected) {
  Gen g(51);
  const Index n = 20;
  DenseOperator a(Matrix::Identity(n, n));
  CostLedger l;
  VectorOps ops(l);
  Matrix v = Matrix::Zero(n, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 1.0;
  Matrix w = Matrix::Zero(n, 2);
  w(0, 0) = 1.0;
  w(5, 1) = 1.0;  // orthogonal to the second right vector
  EXPECT_THROW(LeftRightBasis::from_vectors(a, v, w, ops), Error);
}

TEST(SolutionProjection, JointMatchesDenseOverPriorProducts) {
  Gen g(52);
  const Index n = 40;
  const Matrix am = g.matrix(n, n) + 3.0 * Matrix::Identity(n, n);
  std::vector<PriorSolution> prior;
  Matrix xs(n, 3);
  for (Index j = 0; j < 3; ++j) {
    const Vector b = g.vector(n);
    const Vector x = am.partialPivLu().solve(b) + 1e-7 * g.vector(n);
    prior.push_back({x, b, b - am * x});
    xs.col(j) = x;
  }
  const Vector b = g.vector(n);
  CostLedger l;
  VectorOps ops(l);
  const auto joint = project_over_solutions_joint(prior, Vector::Zero(n), b, ops);
  const Vector ref = oracle::dense_minres(am, Vector::Zero(n), b, oracle::orth(xs));
  EXPECT_LT((joint.x_new - ref).norm(), 1e-8 * ref.norm());
  EXPECT_EQ(l.matvecs(), 0);
  const auto seq = project_over_solutions(prior, Vector::Zero(n), b, ops);
  EXPECT_LE(seq.residual_norm_after, b.norm() * (1 + 1e-12));
  EXPECT_GE(seq.residual_norm_after, joint.residual_norm_after * (1 - 1e-10));
  EXPECT_NEAR(seq.r_new.norm(), (b - am * seq.x_new).norm(), 1e-6 * b.norm());
}

TEST(SolutionProjection, RelatedRightHandSideIsNearlySolved) {
  Gen g(53);
  const Index n = 40;
  const Matrix am = g.matrix(n, n) + 3.0 * Matrix::Identity(n, n);
  const Vector b1 = g.vector(n);
  const Vector x1 = am.partialPivLu().solve(b1);
  const Vector b2 = b1 + 1e-4 * g.vector(n);
  CostLedger l;
  VectorOps ops(l);
  const auto res = project_over_solutions({{x1, b1, b1 - am * x1}}, Vector::Zero(n), b2, ops);
  EXPECT_LT(res.residual_norm_after, 1e-3 * b2.norm());
}

TEST(SolutionProjection, ZeroSolutionIsSkipped) {
  const Index n = 10;
  CostLedger l;
  VectorOps ops(l);
  const auto res =
      project_over_solutions({{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n)}}, Vector::Zero(n), Vector::Ones(n), ops);
  EXPECT_EQ(res.x_new, Vector::Zero(n));
  EXPECT_FALSE(res.flags.empty());
}
