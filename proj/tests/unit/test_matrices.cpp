#include <gtest/gtest.h>

#include "defl/eigen_oracle.hpp"
#include "defl/generators.hpp"
#include "defl/left_basis.hpp"
#include "oracles.hpp"

using namespace defl;

TEST(Bidiagonal, StructureAndEigenvalues) {
  const Matrix d = make_bidiagonal(50).to_dense();
  EXPECT_EQ(d(0, 0), Scalar(0.1));
  EXPECT_EQ(d(1, 1), Scalar(1.0));
  EXPECT_EQ(d(49, 49), Scalar(49.0));
  for (Index i = 0; i + 1 < 50; ++i) EXPECT_EQ(d(i, i + 1), Scalar(1.0));
  EXPECT_EQ(make_bidiagonal(50).nonzeros(), 99);
  const auto oracle = EigenOracle::compute(d, 1e14);
  std::vector<double> re;
  for (Index i = 0; i < 50; ++i) re.push_back(oracle.lambda(i).real());
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 0.1, 1e-8);
  EXPECT_NEAR(re[1], 1.0, 1e-8);
}

TEST(Gamma5, IsGamma5Hermitian) {
  const auto g5 = make_gamma5_matrix(96, 3, 3.8, 7);
  const Matrix a = g5.matrix.to_dense();
  const Matrix h = g5.gamma5.diag.cast<Scalar>().asDiagonal() * a;
  EXPECT_LT((h - h.adjoint()).norm(), 1e-14 * h.norm());
  EXPECT_EQ(g5.gamma5.diag.head(48), RealVector::Ones(48));
  EXPECT_EQ(g5.gamma5.diag.tail(48), -RealVector::Ones(48));
  EXPECT_FALSE(g5.matrix.is_real());
  // A^H (gamma5 z) = gamma5 A z = lambda gamma5 z, so gamma5 z is the left
  // eigenvector belonging to conj(lambda).
  const auto oracle = EigenOracle::compute(a);
  for (Index i = 0; i < 96; i += 7) {
    const Vector gz = g5.gamma5.apply(oracle.z.col(i)).normalized();
    EXPECT_LT((a.adjoint() * gz - oracle.lambda(i) * gz).norm(), 1e-8 * a.norm());
  }
}

TEST(Gamma5, DeterministicPerSeed) {
  EXPECT_EQ(make_gamma5_matrix(64, 2, 3.8, 3).matrix.checksum(), make_gamma5_matrix(64, 2, 3.8, 3).matrix.checksum());
  EXPECT_NE(make_gamma5_matrix(64, 2, 3.8, 3).matrix.checksum(), make_gamma5_matrix(64, 2, 3.8, 4).matrix.checksum());
}

TEST(Gamma5, LeftBasisCostsNoProducts) {
  const auto g5 = make_gamma5_matrix(64, 2, 3.8, 3);
  oracle::Gen g(81);
  const Matrix v = oracle::orth(g.matrix(64, 5));
  const Matrix w = gamma5_left_basis(g5.gamma5, v);
  EXPECT_LT((w.adjoint() * w - Matrix::Identity(5, 5)).norm(), 1e-13);
  // Same span as gamma5 V.
  const RealVector cos = principal_angle_cosines(w, oracle::orth(g5.gamma5.apply(v)));
  EXPECT_NEAR(cos.minCoeff(), 1.0, 1e-12);
}

TEST(Rhs, KindsAndDeterminism) {
  const Vector a = make_rhs(100, rhs::RandomNormal{}, 5);
  EXPECT_EQ(a, make_rhs(100, rhs::RandomNormal{}, 5));
  EXPECT_NE(a, make_rhs(100, rhs::RandomNormal{}, 6));
  EXPECT_TRUE(is_real_valued(a));
  const Vector e = make_rhs(10, rhs::UnitVector{3}, 0);
  EXPECT_EQ(e.sum(), Scalar(1.0));
  EXPECT_EQ(e(3), Scalar(1.0));
  const Vector rel = make_rhs(100, rhs::Related{a, 1e-4}, 9);
  EXPECT_GT((rel - a).norm(), 0.0);
  EXPECT_LT((rel - a).norm(), 1e-4 * 20);
}

TEST(EigenOracle, DecompositionIsConsistent) {
  oracle::Gen g(82);
  const auto s = oracle::random_diagonalizable(g, 20);
  const auto o = EigenOracle::compute(s.a);
  EXPECT_LT((s.a * o.z - o.z * o.lambda.asDiagonal()).norm(), 1e-10);
  EXPECT_LT((o.u.adjoint() * o.z - Matrix::Identity(20, 20)).norm(), 1e-10);
  for (Index i = 0; i < 20; ++i) EXPECT_NEAR(o.z.col(i).norm(), 1.0, 1e-12);
  Matrix defective = Matrix::Zero(3, 3);
  defective(0, 1) = 1.0;
  EXPECT_THROW(EigenOracle::compute(defective), Error);
}

TEST(LeftBasis, ApproximatesLeftEigenvectors) {
  const Index n = 300;
  CsrOperator a(make_bidiagonal(n));
  const auto left = compute_left_basis(a, LeftBasisConfig{30, 10, 4, 15, 1e-8, 3});
  EXPECT_EQ(left.w.cols(), 4);
  const auto oracle = EigenOracle::compute(make_bidiagonal(n).to_dense(), 1e16);
  // Left eigenvector of the smallest eigenvalue (0.1).
  Index j = 0;
  for (Index i = 0; i < n; ++i)
    if (std::abs(oracle.lambda(i) - 0.1) < 1e-6) j = i;
  const Vector u = oracle.u.col(j).normalized();
  EXPECT_GT((left.w.adjoint() * u).norm(), 0.99);
}
