#include "defl/projections.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include "defl/dense.hpp"

namespace defl {

namespace {

// ||r0||^2 - ||c||^2 + ||c - Hbar d||^2 loses digits when the result is
// far below ||r0||^2; fall back to an explicit norm there.
double norm_after_projection(double before, double c_norm, double residual_coord_norm, const Vector& r,
                             VectorOps& ops) {
  const double sq = before * before - c_norm * c_norm + residual_coord_norm * residual_coord_norm;
  if (sq >= 1e-6 * before * before) return std::sqrt(sq);
  return ops.norm(r);
}

}  // namespace

ProjectionOutcome minres_project(const DeflationBasis& basis, const Vector& x0, const Vector& r0,
                                 VectorOps& ops, std::optional<double> norm_before) {
  ProjectionOutcome out;
  out.residual_norm_before = norm_before ? *norm_before : ops.norm(r0);
  out.x_new = x0;
  out.r_new = r0;
  if (basis.empty()) {
    out.residual_norm_after = out.residual_norm_before;
    return out;
  }
  if (basis.dimension() != r0.size()) throw Error("minres projection: basis dimension mismatch");
  const Index k = basis.k();
  const CostModel& model = ops.ledger().model();

  const Matrix c = ops.inner(basis.v, r0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis.hbar);
  out.d = cod.solve(c);
  out.rank_deficient = cod.rank() < k;
  const Vector hd = basis.hbar * out.d;
  ops.ledger().record_small_dense(2 * model.small_product(basis.rows(), k, k) + 2 * model.small_product(basis.rows(), k, 1));

  ops.combine_add(basis.v.leftCols(k), out.d, out.x_new);
  ops.combine_sub(basis.v, hd, out.r_new);
  out.residual_norm_after =
      norm_after_projection(out.residual_norm_before, c.norm(), (c.col(0) - hd).norm(), out.r_new, ops);
  if (out.rank_deficient) out.flags.push_back("rank_deficient_projection");
  return out;
}

BlockProjectionOutcome minres_project_block(const DeflationBasis& basis, const Matrix& x0, const Matrix& r0,
                                            VectorOps& ops, const RealVector& norms_before) {
  BlockProjectionOutcome out;
  out.x_new = x0;
  out.r_new = r0;
  out.norms_before = norms_before;
  out.norms_after = norms_before;
  if (basis.empty()) return out;
  const Index k = basis.k();
  const Index s = r0.cols();
  const CostModel& model = ops.ledger().model();

  const Matrix c = ops.inner(basis.v, r0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis.hbar);
  const Matrix d = cod.solve(c);
  const Matrix hd = basis.hbar * d;
  ops.ledger().record_small_dense(2 * model.small_product(basis.rows(), k, k) +
                                  2 * model.small_product(basis.rows(), k, s));
  ops.combine_add(basis.v.leftCols(k), d, out.x_new);
  ops.combine_sub(basis.v, hd, out.r_new);
  for (Index j = 0; j < s; ++j) {
    out.norms_after(j) = norm_after_projection(norms_before(j), c.col(j).norm(), (c.col(j) - hd.col(j)).norm(),
                                               out.r_new.col(j), ops);
  }
  return out;
}

void LeftRightBasis::finish() {
  if (v_.cols() != w_.cols()) throw Error("left-right basis: V and W must have the same number of columns");
  if (v_.cols() == 0) throw Error("left-right basis: empty");
  m_ = w_.adjoint() * av_;
  Eigen::JacobiSVD<Matrix> svd(m_);
  const auto& sv = svd.singularValues();
  condition_ = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(condition_ <= 1e12))
    throw Error("left-right basis: W^H A V is singular or ill-conditioned (cond > 1e12); use fewer or more "
                "accurate eigenvectors");
  lu_.compute(m_);
}

LeftRightBasis LeftRightBasis::from_deflation(const DeflationBasis& right, const Matrix& w, VectorOps& ops) {
  LeftRightBasis out;
  const Index k = right.k();
  out.v_ = right.v.leftCols(k);
  out.w_ = orthonormalize(w, 1e-12, &ops).q;
  out.av_ = ops.combine(right.v, right.hbar);
  ops.ledger().record_vector_ops(out.w_.cols() * k);
  out.finish();
  return out;
}

LeftRightBasis LeftRightBasis::from_vectors(const LinearOperator& a, const Matrix& v, const Matrix& w,
                                            VectorOps& ops) {
  LeftRightBasis out;
  out.v_ = orthonormalize(v, 1e-12, &ops).q;
  out.w_ = orthonormalize(w, 1e-12, &ops).q;
  ops.apply_block(a, out.v_, out.av_);
  ops.ledger().record_vector_ops(out.w_.cols() * out.v_.cols());
  out.finish();
  return out;
}

LeftRightBasis LeftRightBasis::from_parts(Matrix v, Matrix w, Matrix av) {
  LeftRightBasis out;
  out.v_ = std::move(v);
  out.w_ = std::move(w);
  out.av_ = std::move(av);
  out.finish();
  return out;
}

ProjectionOutcome lr_project(const LeftRightBasis& basis, const Vector& x0, const Vector& r0, VectorOps& ops) {
  ProjectionOutcome out;
  out.residual_norm_before = ops.norm(r0);
  const Matrix wr = ops.inner(basis.w(), r0);
  out.d = basis.solve(wr.col(0));
  ops.ledger().record_small_dense(ops.ledger().model().small_product(basis.k(), basis.k(), 1) * 2);
  out.x_new = x0;
  out.r_new = r0;
  ops.combine_add(basis.v(), out.d, out.x_new);
  ops.combine_sub(basis.av(), out.d, out.r_new);
  out.residual_norm_after = ops.norm(out.r_new);
  return out;
}

ProjectionOutcome project_over_solutions(const std::vector<PriorSolution>& prior, const Vector& x0,
                                         const Vector& r0, VectorOps& ops) {
  ProjectionOutcome out;
  out.x_new = x0;
  out.r_new = r0;
  out.residual_norm_before = ops.norm(r0);
  out.d = Vector::Zero(static_cast<Index>(prior.size()));
  double norm_sq = out.residual_norm_before * out.residual_norm_before;
  for (std::size_t j = 0; j < prior.size(); ++j) {
    const auto& p = prior[j];
    Vector as = p.b;
    ops.axpy(-1.0, p.r, as);
    const double as_sq = std::pow(ops.norm(as), 2);
    if (as_sq <= 1e-28 * p.b.squaredNorm()) {
      out.flags.push_back("solution_direction_skipped");
      continue;
    }
    const Scalar proj = ops.dot(as, out.r_new);
    const Scalar d = proj / as_sq;
    ops.axpy(d, p.x, out.x_new);
    ops.axpy(-d, as, out.r_new);
    out.d(static_cast<Index>(j)) = d;
    norm_sq -= std::norm(proj) / as_sq;
  }
  if (norm_sq >= 1e-6 * out.residual_norm_before * out.residual_norm_before)
    out.residual_norm_after = std::sqrt(norm_sq);
  else
    out.residual_norm_after = ops.norm(out.r_new);
  return out;
}

ProjectionOutcome project_over_solutions_joint(const std::vector<PriorSolution>& prior, const Vector& x0,
                                               const Vector& r0, VectorOps& ops) {
  ProjectionOutcome out;
  out.x_new = x0;
  out.r_new = r0;
  out.residual_norm_before = ops.norm(r0);
  if (prior.empty()) {
    out.residual_norm_after = out.residual_norm_before;
    return out;
  }
  const Index n = r0.size();
  const Index j = static_cast<Index>(prior.size());
  Matrix s(n, j), as(n, j);
  for (Index i = 0; i < j; ++i) {
    s.col(i) = prior[i].x;
    as.col(i) = prior[i].b;
    ops.axpy(-1.0, prior[i].r, as.col(i));
  }
  const auto qr = orthonormalize(as, 1e-12, &ops);
  if (!qr.dependent.empty()) out.flags.push_back("solution_direction_skipped");
  // A S = Q R; keep the independent columns of S.
  Matrix s_kept(n, static_cast<Index>(qr.kept.size()));
  Matrix r_kept(qr.q.cols(), static_cast<Index>(qr.kept.size()));
  for (std::size_t c = 0; c < qr.kept.size(); ++c) {
    s_kept.col(static_cast<Index>(c)) = s.col(qr.kept[c]);
    r_kept.col(static_cast<Index>(c)) = qr.r.col(qr.kept[c]);
  }
  const Matrix c = ops.inner(qr.q, out.r_new);
  out.d = r_kept.colPivHouseholderQr().solve(c.col(0));
  ops.combine_add(s_kept, out.d, out.x_new);
  ops.combine_sub(qr.q, c, out.r_new);
  out.residual_norm_after = ops.norm(out.r_new);
  return out;
}

}  // namespace defl
