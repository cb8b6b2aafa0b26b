#include "defl/dense.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace defl {

OrthonormalizeResult orthonormalize_against(const Eigen::Ref<const Matrix>& against,
                                            const Eigen::Ref<const Matrix>& block, double drop_tol,
                                            VectorOps* ops) {
  const Index n = block.rows();
  const Index j = block.cols();
  if (against.cols() > 0 && against.rows() != n) throw Error("orthonormalize: length mismatch");
  const Index fixed = against.cols();

  Matrix basis(n, fixed + j);
  if (fixed > 0) basis.leftCols(fixed) = against;
  Index used = fixed;

  OrthonormalizeResult out;
  Matrix r = Matrix::Zero(j, j);

  for (Index c = 0; c < j; ++c) {
    Vector v = block.col(c);
    const double original = v.norm();
    Vector coeff = Vector::Zero(used);
    for (int pass = 0; pass < 2; ++pass) {
      if (used == 0) break;
      Vector h = basis.leftCols(used).adjoint() * v;
      v.noalias() -= basis.leftCols(used) * h;
      coeff += h;
    }
    const double remaining = v.norm();
    if (ops) {
      ops->ledger().record_vector_ops(4 * used + 1);
    }
    // Coefficients against the new columns only; against-block coefficients are discarded.
    for (Index i = 0; i < static_cast<Index>(out.kept.size()); ++i) r(i, c) = coeff(fixed + i);
    if (original == 0.0 || remaining <= drop_tol * original) {
      out.dependent.push_back(c);
      continue;
    }
    if (ops) ops->ledger().record_vector_ops();
    basis.col(used) = v / remaining;
    r(static_cast<Index>(out.kept.size()), c) = remaining;
    out.kept.push_back(c);
    ++used;
  }
  const Index kept = static_cast<Index>(out.kept.size());
  out.q = basis.middleCols(fixed, kept);
  out.r = r.topRows(kept);
  return out;
}

OrthonormalizeResult orthonormalize(const Eigen::Ref<const Matrix>& block, double drop_tol,
                                    VectorOps* ops) {
  return orthonormalize_against(Matrix(block.rows(), 0), block, drop_tol, ops);
}

LeastSquaresResult least_squares_small(const Eigen::Ref<const Matrix>& m,
                                       const Eigen::Ref<const Vector>& c) {
  if (m.rows() < m.cols()) throw Error("least_squares_small: requires rows >= cols");
  if (c.size() != m.rows()) throw Error("least_squares_small: rhs length mismatch");
  LeastSquaresResult out;
  if (m.cols() == 0) {
    out.solution.resize(0);
    out.residual_norm = c.norm();
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
  out.solution = cod.solve(c);
  out.residual_norm = (c - m * out.solution).norm();
  out.rank_deficient = cod.rank() < m.cols();
  return out;
}

namespace {

void normalize_columns(Matrix& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    const double nrm = v.col(j).norm();
    if (nrm > 0.0) v.col(j) /= nrm;
  }
}

EigenPairs eig_standard(const Matrix& a) {
  EigenPairs out;
  if (a.rows() == 0) return out;
  if (is_real_valued(a)) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a.real());
    if (es.info() != Eigen::Success) throw Error("small_eig: real eigensolver failed to converge");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw Error("small_eig: complex eigensolver failed to converge");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  normalize_columns(out.vectors);
  return out;
}

}  // namespace

EigenPairs small_eig(const Eigen::Ref<const Matrix>& g) {
  if (g.rows() != g.cols()) throw Error("small_eig: matrix must be square");
  return eig_standard(g);
}

EigenPairs small_eig(const Eigen::Ref<const Matrix>& g, const Eigen::Ref<const Matrix>& b) {
  if (g.rows() != g.cols() || b.rows() != b.cols() || g.rows() != b.rows())
    throw Error("small_eig: pencil dimensions mismatch");
  if (g.rows() == 0) return {};
  Eigen::FullPivLU<Matrix> lu(b);
  if (!lu.isInvertible()) throw Error("small_eig: B is singular");
  Matrix reduced = lu.solve(Matrix(g));
  if (is_real_valued(g) && is_real_valued(b)) {
    // Drop round-off imaginary parts so the real solver is used.
    reduced = Matrix(reduced.real().cast<Scalar>());
  }
  return eig_standard(reduced);
}

}  // namespace defl
