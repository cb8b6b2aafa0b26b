#include "defl/harmonic_ritz.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "defl/dense.hpp"

namespace defl {

namespace {

std::vector<Index> order_by_magnitude(const Vector& values) {
  std::vector<Index> idx(values.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    const double ma = std::abs(values(a));
    const double mb = std::abs(values(b));
    if (ma != mb) return ma < mb;
    return values(a).imag() > values(b).imag();
  });
  return idx;
}

Vector real_direction(const Vector& g) {
  // Rotate so the largest entry is real, then keep the real part.
  Index imax = 0;
  g.cwiseAbs().maxCoeff(&imax);
  const Scalar phase = std::abs(g(imax)) > 0.0 ? std::conj(g(imax)) / std::abs(g(imax)) : Scalar(1.0);
  return (g * phase).real().cast<Scalar>();
}

}  // namespace

HarmonicExtraction harmonic_extract(const Eigen::Ref<const Matrix>& hbar, Index k, bool real_arithmetic) {
  const Index cols = hbar.cols();
  if (k < 1 || k > cols) throw Error("harmonic_ritz: need 1 <= k <= subspace dimension");
  HarmonicExtraction out;
  const Matrix h = hbar.topRows(cols);

  Eigen::JacobiSVD<Matrix> svd(h);
  const auto& sv = svd.singularValues();
  const bool singular = sv(sv.size() - 1) <= 1e-14 * sv(0);

  EigenPairs pairs;
  if (singular) {
    out.ritz_fallback = true;
    pairs = small_eig(h);
  } else {
    const Matrix g = hbar.adjoint() * hbar;
    pairs = small_eig(g, h.adjoint());
  }
  const auto order = order_by_magnitude(pairs.values);
  out.all_values.resize(cols);
  for (Index i = 0; i < cols; ++i) out.all_values(i) = pairs.values(order[i]);

  std::vector<Index> chosen;
  std::vector<Vector> span;
  std::vector<bool> used(cols, false);
  for (Index pos = 0; pos < cols && static_cast<Index>(chosen.size()) < k; ++pos) {
    const Index i = order[pos];
    if (used[i]) continue;
    used[i] = true;
    const Scalar theta = pairs.values(i);
    if (!real_arithmetic) {
      chosen.push_back(i);
      span.push_back(pairs.vectors.col(i));
      continue;
    }
    // The eigensolver works in complex arithmetic, so real values come back
    // with roundoff-sized imaginary parts.
    if (std::abs(theta.imag()) <= 1e-9 * std::max(std::abs(theta), 1e-300)) {
      chosen.push_back(i);
      span.push_back(real_direction(pairs.vectors.col(i)));
      continue;
    }
    // Conjugate partner: nearest unused value to conj(theta).
    Index partner = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < cols; ++j) {
      if (used[j]) continue;
      const double d = std::abs(pairs.values(j) - std::conj(theta));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    if (partner < 0) throw Error("harmonic_ritz: unpaired complex value in real arithmetic");
    if (static_cast<Index>(chosen.size()) + 2 > k) {
      if (static_cast<Index>(chosen.size()) + 2 > cols) break;  // no room; stop short
      out.widened = true;
    }
    used[partner] = true;
    const Index upper = theta.imag() > 0.0 ? i : partner;
    const Index lower = upper == i ? partner : i;
    chosen.push_back(upper);
    chosen.push_back(lower);
    const Vector g = pairs.vectors.col(upper);
    span.push_back(g.real().cast<Scalar>());
    span.push_back(g.imag().cast<Scalar>());
  }

  const Index keff = static_cast<Index>(chosen.size());
  out.values.resize(keff);
  out.vectors.resize(cols, keff);
  out.span_basis.resize(cols, keff);
  for (Index c = 0; c < keff; ++c) {
    out.values(c) = pairs.values(chosen[c]);
    out.vectors.col(c) = pairs.vectors.col(chosen[c]);
    out.span_basis.col(c) = span[c];
  }
  return out;
}

std::vector<HarmonicRitzPair> harmonic_ritz(const ArnoldiFactorization& fact, Index k, bool real_arithmetic) {
  const auto ext = harmonic_extract(fact.hbar(), k, real_arithmetic);
  std::vector<HarmonicRitzPair> out;
  const auto v = fact.basis().leftCols(fact.cols());
  for (Index c = 0; c < ext.values.size(); ++c) {
    Vector y = v * ext.vectors.col(c);
    y /= y.norm();
    out.push_back({ext.values(c), std::move(y)});
  }
  return out;
}

}  // namespace defl
