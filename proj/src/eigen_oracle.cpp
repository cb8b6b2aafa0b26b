#include "defl/eigen_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace defl {

EigenOracle EigenOracle::compute(const Eigen::Ref<const Matrix>& a, double max_condition) {
  if (a.rows() != a.cols()) throw Error("eigen oracle: matrix must be square");
  Eigen::ComplexEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw Error("eigen oracle: dense eigensolver failed");
  EigenOracle out;
  out.lambda = es.eigenvalues();
  out.z = es.eigenvectors();
  for (Index i = 0; i < out.z.cols(); ++i) out.z.col(i).normalize();
  Eigen::JacobiSVD<Matrix> svd(out.z);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) * max_condition > sv(0)))
    throw Error("eigen oracle: matrix is not (numerically) diagonalizable");
  out.u = out.z.inverse().adjoint();
  return out;
}

}  // namespace defl
