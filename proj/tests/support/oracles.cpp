#include "oracles.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace defl::oracle {

Vector Gen::vector(Index n, bool complex) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = complex ? complex_normal() : Scalar(normal(), 0.0);
  return v;
}

Matrix Gen::matrix(Index rows, Index cols, bool complex) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) m.col(j) = vector(rows, complex);
  return m;
}

KnownSpectrum random_diagonalizable(Gen& g, Index n, bool complex, double nonnormality) {
  KnownSpectrum s;
  s.lambda.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double radius = g.uniform(0.5, 3.0);
    const double angle = complex ? g.uniform(-3.0, 3.0) : 0.0;
    s.lambda(i) = std::polar(radius, angle);
    if (!complex && g.uniform() < 0.5) s.lambda(i) = -s.lambda(i);
  }
  Matrix z = Matrix::Identity(n, n) + nonnormality / std::sqrt(static_cast<double>(n)) * g.matrix(n, n, complex);
  for (Index j = 0; j < n; ++j) z.col(j).normalize();
  s.z = z;
  const Matrix zinv = z.inverse();
  s.u = zinv.adjoint();
  s.a = z * s.lambda.asDiagonal() * zinv;
  if (!complex) s.a = s.a.real().cast<Scalar>();
  return s;
}

Matrix orth(const Matrix& s) {
  Eigen::HouseholderQR<Matrix> qr(s);
  return qr.householderQ() * Matrix::Identity(s.rows(), s.cols());
}

Matrix krylov_basis(const Matrix& a, const Vector& r, Index m) {
  // Orthonormalize as we go so the power sequence stays well scaled, but
  // with Householder QR of the whole block each time rather than an
  // Arnoldi recurrence.
  Matrix k(r.size(), m);
  k.col(0) = r.normalized();
  for (Index j = 1; j < m; ++j) {
    const Matrix q = orth(k.leftCols(j));
    k.col(j) = a * q.col(j - 1);
  }
  return orth(k);
}

Vector dense_minres(const Matrix& a, const Vector& x0, const Vector& b, const Matrix& q) {
  const Matrix aq = a * q;
  const Vector r0 = b - a * x0;
  const Vector y = aq.colPivHouseholderQr().solve(r0);
  return x0 + q * y;
}

Matrix dense_block_minres(const Matrix& a, const Matrix& x0, const Matrix& b, const Matrix& q) {
  const Matrix aq = a * q;
  const Matrix r0 = b - a * x0;
  const Matrix y = aq.colPivHouseholderQr().solve(r0);
  return x0 + q * y;
}

Vector dense_petrov_galerkin(const Matrix& a, const Vector& x0, const Vector& r0, const Matrix& v, const Matrix& w) {
  const Matrix m = w.adjoint() * a * v;
  const Vector d = m.fullPivLu().solve(w.adjoint() * r0);
  return x0 + v * d;
}

Scalar minres_component_formula(const KnownSpectrum& s, const Vector& alpha, Index j) {
  Scalar sum = 0.0;
  for (Index i = 0; i < alpha.size(); ++i)
    if (i != j) sum += alpha(i) * s.z.col(j).dot(s.z.col(i));
  return -sum;
}

Scalar left_right_component_formula(const Vector& alpha, const Vector& beta, Index j) {
  Scalar sum = 0.0;
  for (Index i = 0; i < alpha.size(); ++i)
    if (i != j) sum += alpha(i) * std::conj(beta(i));
  return -sum / std::conj(beta(j));
}

BicgstabTrace reference_bicgstab(const Matrix& a, const Vector& b, double target, Index max_matvecs) {
  BicgstabTrace t;
  t.x = Vector::Zero(b.size());
  Vector r = b;
  const Vector rhat = r;
  Vector p = r;
  Scalar rho = rhat.dot(r);
  Index used = 0;
  while (r.norm() > target && used + 2 <= max_matvecs) {
    const Vector v = a * p;
    ++used;
    const Scalar alpha = rho / rhat.dot(v);
    const Vector s = r - alpha * v;
    t.norms.push_back(s.norm());
    const Vector as = a * s;
    ++used;
    const Scalar omega = as.dot(s) / as.squaredNorm();
    t.x += alpha * p + omega * s;
    r = s - omega * as;
    t.norms.push_back(r.norm());
    const Scalar rho_next = rhat.dot(r);
    const Scalar beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    p = r + beta * (p - omega * v);
  }
  return t;
}

double pencil_residual(const Matrix& g, const Matrix& b, Scalar theta) {
  const Matrix m = g - theta * b;
  Eigen::JacobiSVD<Matrix> svd(m);
  const double scale = svd.singularValues()(0) > 0 ? g.norm() + std::abs(theta) * b.norm() : 1.0;
  return svd.singularValues()(svd.singularValues().size() - 1) / scale;
}

}  // namespace defl::oracle
