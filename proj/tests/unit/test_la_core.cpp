#include <gtest/gtest.h>

#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "defl/csr_matrix.hpp"
#include "defl/dense.hpp"
#include "defl/givens_least_squares.hpp"
#include "defl/linear_operator.hpp"
#include "defl/matrix_market.hpp"
#include "defl/rng.hpp"
#include "defl/vector_ops.hpp"
#include "oracles.hpp"

using namespace defl;
using defl::oracle::Gen;

TEST(Csr, DuplicateTripletsAreSummed) {
  const CsrMatrix a = CsrMatrix::from_triplets(2, {{0, 1, 2.0}, {1, 0, 1.0}, {0, 1, 3.0}});
  EXPECT_EQ(a.nonzeros(), 2);
  EXPECT_EQ(a.to_dense()(0, 1), Scalar(5.0));
}

TEST(Csr, MultiplyAndAdjointMatchDense) {
  Gen g(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = g.integer(1, 25);
    Matrix d = g.matrix(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (g.uniform() < 0.6) d(i, j) = 0.0;
    const CsrMatrix a = CsrMatrix::from_dense(d);
    const Vector x = g.vector(n);
    Vector y;
    a.multiply(x, y);
    EXPECT_LT((y - d * x).norm(), 1e-12 * (1 + (d * x).norm()));
    a.multiply_adjoint(x, y);
    EXPECT_LT((y - d.adjoint() * x).norm(), 1e-12 * (1 + x.norm() * d.norm()));
    EXPECT_EQ(a.adjoint().to_dense(), d.adjoint());
  }
}

TEST(Csr, RejectsMalformedStructure) {
  EXPECT_THROW(CsrMatrix(2, {0, 1}, {0}, {1.0}), Error);
  EXPECT_THROW(CsrMatrix(2, {0, 1, 2}, {0, 5}, {1.0, 1.0}), Error);
  EXPECT_THROW(CsrMatrix::from_triplets(2, {{2, 0, 1.0}}), Error);
}

TEST(Csr, ChecksumSeesValueBits) {
  const CsrMatrix a = CsrMatrix::identity(4);
  const CsrMatrix b = CsrMatrix::from_triplets(4, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0 + 1e-16 * 4}});
  EXPECT_EQ(a.checksum(), CsrMatrix::identity(4).checksum());
  EXPECT_NE(a.checksum(), b.checksum());
}

TEST(Operator, CountsEveryApplication) {
  CsrOperator a(CsrMatrix::identity(3));
  Vector y;
  a.apply(Vector::Ones(3), y);
  a.apply_adjoint(Vector::Ones(3), y);
  Matrix yb;
  a.apply_block(Matrix::Ones(3, 4), yb);
  EXPECT_EQ(a.applications(), 6);
  AdjointOperator adj(a);
  adj.apply(Vector::Ones(3), y);
  EXPECT_EQ(a.applications(), 7);
  EXPECT_EQ(adj.applications(), 1);
}

TEST(CostLedger, FlopsEqualDeclaredModel) {
  for (const Field f : {Field::real, Field::complex}) {
    CostLedger l(CostModel{f, 100, 300});
    l.record_matvecs(3);
    l.record_vector_ops(17);
    l.record_small_dense(55);
    const Count per = f == Field::real ? 2 : 8;
    EXPECT_EQ(l.flops(), 3 * per * 300 + 17 * per * 100 + 55);
    EXPECT_EQ(l.flops(), l.declared_flops());
  }
}

TEST(VectorOps, ChargesOnePerLengthNOperation) {
  CostLedger l(CostModel{Field::complex, 5, 5});
  VectorOps ops(l);
  Gen g(1);
  const Matrix v = g.matrix(5, 3);
  Matrix y = Matrix::Zero(5, 2);
  ops.inner(v, y);
  ops.combine_add(v, Matrix::Ones(3, 2), y);
  Vector x = g.vector(5);
  ops.dot(x, x);
  ops.norm(x);
  EXPECT_EQ(l.vector_ops(), 6 + 6 + 2);
}

TEST(Dense, OrthonormalizeGivesQrAndFlagsDependence) {
  Gen g(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(4, 30);
    const Index j = g.integer(1, std::min<Index>(n, 6));
    Matrix b = g.matrix(n, j, trial % 2 == 0);
    const auto res = orthonormalize(b);
    EXPECT_TRUE(res.dependent.empty());
    EXPECT_LT((res.q.adjoint() * res.q - Matrix::Identity(j, j)).norm(), 1e-13);
    EXPECT_LT((res.q * res.r - b).norm(), 1e-12 * b.norm());
  }
  Matrix b = g.matrix(10, 3);
  b.col(2) = 2.0 * b.col(0) - b.col(1);
  const auto res = orthonormalize(b);
  ASSERT_EQ(res.dependent.size(), 1u);
  EXPECT_EQ(res.dependent[0], 2);
  EXPECT_EQ(res.q.cols(), 2);
}

TEST(Dense, OrthonormalizeAgainstExistingBasis) {
  Gen g(6);
  const Matrix q = oracle::orth(g.matrix(12, 4));
  const Matrix b = g.matrix(12, 3);
  const auto res = orthonormalize_against(q, b);
  EXPECT_LT((q.adjoint() * res.q).norm(), 1e-13);
  EXPECT_LT((res.q.adjoint() * res.q - Matrix::Identity(3, 3)).norm(), 1e-13);
}

TEST(Dense, SmallLeastSquaresMatchesNormalEquations) {
  Gen g(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Index r = g.integer(2, 20);
    const Index c = g.integer(1, r);
    const Matrix m = g.matrix(r, c);
    const Vector rhs = g.vector(r);
    const auto ls = least_squares_small(m, rhs);
    const Vector ref = (m.adjoint() * m).ldlt().solve(m.adjoint() * rhs);
    EXPECT_LT((ls.solution - ref).norm(), 1e-9 * (1 + ref.norm()));
    EXPECT_NEAR(ls.residual_norm, (rhs - m * ref).norm(), 1e-10);
    EXPECT_FALSE(ls.rank_deficient);
  }
  Matrix m = Matrix::Zero(4, 2);
  m(0, 0) = 1.0;
  m(1, 0) = 1.0;
  const auto ls = least_squares_small(m, Vector::Ones(4));
  EXPECT_TRUE(ls.rank_deficient);
  EXPECT_NEAR(std::abs(ls.solution(1)), 0.0, 1e-14);
}

TEST(Dense, SmallEigenpairsSatisfyThePencil) {
  Gen g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = g.integer(1, 12);
    const bool complex = trial % 2 == 1;
    const Matrix gm = g.matrix(n, n, complex);
    const Matrix bm = g.matrix(n, n, complex) + 3.0 * Matrix::Identity(n, n);
    const auto pairs = small_eig(gm, bm);
    ASSERT_EQ(pairs.values.size(), n);
    for (Index i = 0; i < n; ++i) {
      const Vector res = gm * pairs.vectors.col(i) - pairs.values(i) * bm * pairs.vectors.col(i);
      EXPECT_LT(res.norm(), 1e-10 * (gm.norm() + std::abs(pairs.values(i)) * bm.norm()));
      EXPECT_NEAR(pairs.vectors.col(i).norm(), 1.0, 1e-12);
    }
    if (!complex) {
      // Real input: nonreal eigenvalues come in exact conjugate pairs.
      for (Index i = 0; i < n; ++i) {
        if (pairs.values(i).imag() == 0.0) continue;
        bool found = false;
        for (Index j = 0; j < n; ++j) found = found || pairs.values(j) == std::conj(pairs.values(i));
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(Givens, MatchesDenseLeastSquaresColumnByColumn) {
  Gen g(9);
  for (int trial = 0; trial < 25; ++trial) {
    const Index cols = g.integer(1, 10);
    const Index extra = g.integer(1, 3);  // rows below the diagonal per column
    const Index s = g.integer(1, 3);
    const Index rows = cols + extra;
    Matrix h = Matrix::Zero(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i <= std::min(rows - 1, j + extra); ++i) h(i, j) = g.complex_normal();
    Matrix c = Matrix::Zero(rows, s);
    c.topRows(extra) = g.matrix(extra, s);
    GivensLeastSquares ls(c.topRows(extra));
    for (Index j = 0; j < cols; ++j) {
      ls.add_rows(1);
      ls.add_column(h.col(j).head(std::min(rows, j + 1 + extra)));
      const Matrix hj = h.topLeftCorner(j + 1 + extra, j + 1);
      const Matrix cj = c.topRows(j + 1 + extra);
      const Matrix ref = hj.colPivHouseholderQr().solve(cj);
      EXPECT_LT((ls.solve() - ref).norm(), 1e-9 * (1 + ref.norm()));
      const RealVector norms = ls.residual_norms();
      for (Index q = 0; q < s; ++q) EXPECT_NEAR(norms(q), (cj.col(q) - hj * ref.col(q)).norm(), 1e-10);
    }
  }
}

TEST(Rng, DeterministicAndStandardized) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
  Rng r(1);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.01);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  Rng c(2);
  double csq = 0;
  for (int i = 0; i < n; ++i) csq += std::norm(c.complex_normal());
  EXPECT_NEAR(csq / n, 1.0, 0.01);
}

TEST(MatrixMarket, CoordinateRoundTripIsExact) {
  Gen g(10);
  for (const bool complex : {false, true}) {
    Matrix d = g.matrix(7, 7, complex);
    d(2, 3) = 0.0;
    d(4, 4) = -0.0;
    const CsrMatrix a = CsrMatrix::from_dense(d);
    std::stringstream s;
    write_matrix_market(s, a);
    const CsrMatrix b = read_matrix_market(s);
    EXPECT_EQ(a.checksum(), b.checksum());
  }
}

TEST(MatrixMarket, DenseRoundTripIsBitExact) {
  Gen g(11);
  Matrix d = g.matrix(5, 3);
  d(0, 0) = Scalar(-0.0, 1e-300);
  std::stringstream s;
  write_dense_matrix_market(s, d);
  const Matrix e = read_dense_matrix_market(s);
  ASSERT_EQ(e.rows(), 5);
  for (Index j = 0; j < 3; ++j)
    for (Index i = 0; i < 5; ++i) {
      EXPECT_EQ(std::signbit(e(i, j).real()), std::signbit(d(i, j).real()));
      EXPECT_EQ(e(i, j), d(i, j));
    }
}

TEST(MatrixMarket, ExpandsSymmetricStorage) {
  std::stringstream sym("%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 2\n1 1 4\n3 1 2\n");
  EXPECT_EQ(read_matrix_market(sym).to_dense()(0, 2), Scalar(2.0));
  std::stringstream herm("%%MatrixMarket matrix coordinate complex hermitian\n2 2 1\n2 1 1 2\n");
  EXPECT_EQ(read_matrix_market(herm).to_dense()(0, 1), Scalar(1.0, -2.0));
  std::stringstream skew("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 3\n");
  EXPECT_EQ(read_matrix_market(skew).to_dense()(0, 1), Scalar(-3.0));
  std::stringstream pat("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n");
  EXPECT_EQ(read_matrix_market(pat).to_dense()(0, 1), Scalar(1.0));
}

TEST(MatrixMarket, ErrorsCarryLineNumbers) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1\n", 3},
      {"%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n", 0},
      {"%%MatrixMarket matrix coordinate real general\n% note\n2 2 1\n3 1 1\n", 4},
      {"%%MatrixMarket matrix coordinate real general\n2 3 1\n", 2},
      {"%%MatrixMarket matrix nonsense real general\n", 1},
      {"hello\n", 1},
  };
  for (const auto& [text, line] : cases) {
    std::stringstream s(text);
    try {
      read_matrix_market(s);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const MatrixMarketError& e) {
      if (line > 0) EXPECT_EQ(e.line(), line) << e.what();
    }
  }
}
