#include "defl/left_basis.hpp"

#include <Eigen/SVD>

#include "defl/dense.hpp"
#include "defl/rng.hpp"

namespace defl {

LeftBasisResult compute_left_basis(const LinearOperator& a, const LeftBasisConfig& config) {
  if (config.keep < 1 || config.keep > config.k) throw Error("left basis: need 1 <= keep <= k");
  AdjointOperator adjoint(a);
  Rng rng(config.seed);
  const Vector b = a.is_real() ? rng.normal_vector(a.dimension()) : rng.complex_normal_vector(a.dimension());

  GmresDrConfig dr{config.m, config.k, config.rtol, std::numeric_limits<Count>::max()};
  if (config.cycles > 0) {
    dr.rtol = 1e-300;
    dr.max_matvecs = config.m + (config.cycles - 1) * (config.m - config.k);
  }
  auto run = gmres_dr_solve(adjoint, b, dr);
  const DeflationBasis& basis = run.basis;

  LeftBasisResult out;
  out.report = std::move(run.report);
  const bool real = a.is_real();
  VectorOps ops(out.report.ledger);
  if (basis.rows() > basis.k()) {
    const auto ext = harmonic_extract(basis.hbar, std::min(config.keep, basis.k()), real);
    out.w = orthonormalize(ops.combine(basis.v.leftCols(basis.k()), ext.span_basis), 1e-12, &ops).q;
    out.values = ext.values;
  } else {
    out.w = basis.v.leftCols(std::min(config.keep, basis.k()));
    out.values = basis.harmonic_values.head(std::min<Index>(config.keep, basis.harmonic_values.size()));
  }
  return out;
}

Matrix gamma5_left_basis(const Gamma5Structure& gamma5, const Eigen::Ref<const Matrix>& v) {
  if (gamma5.dimension() != v.rows()) throw Error("gamma5 left basis: dimension mismatch");
  return orthonormalize(gamma5.apply(v)).q;
}

RealVector principal_angle_cosines(const Eigen::Ref<const Matrix>& q1, const Eigen::Ref<const Matrix>& q2) {
  const Matrix c = q1.adjoint() * q2;
  Eigen::JacobiSVD<Matrix> svd(c);
  return svd.singularValues().cwiseMin(1.0);
}

}  // namespace defl
