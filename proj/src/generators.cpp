#include "defl/generators.hpp"

#include "defl/rng.hpp"

namespace defl {

CsrMatrix make_bidiagonal(Index n) {
  if (n < 1) throw Error("bidiagonal: n must be positive");
  std::vector<Triplet> t;
  t.reserve(2 * n - 1);
  for (Index i = 0; i < n; ++i) {
    t.push_back({i, i, Scalar(i == 0 ? 0.1 : static_cast<double>(i))});
    if (i + 1 < n) t.push_back({i, i + 1, Scalar(1.0)});
  }
  return CsrMatrix::from_triplets(n, std::move(t));
}

namespace {

void add_hermitian_band(std::vector<Triplet>& t, Index offset, Index m, Index bandwidth, double sign,
                        Rng& rng) {
  for (Index d = 1; d <= bandwidth; ++d) {
    for (Index i = 0; i + d < m; ++i) {
      const Scalar v = sign * rng.complex_normal();
      t.push_back({offset + i, offset + i + d, v});
      t.push_back({offset + i + d, offset + i, std::conj(v)});
    }
  }
}

}  // namespace

Gamma5Matrix make_gamma5_matrix(Index n, Index bandwidth, double spectrum_shift, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw Error("gamma5 matrix: n must be even and positive");
  if (bandwidth < 1) throw Error("gamma5 matrix: bandwidth must be positive");
  const Index h = n / 2;
  Rng rng(seed);
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) t.push_back({i, i, Scalar(spectrum_shift)});
  // A = shift I + [[P, Q], [-Q^H, R]]
  add_hermitian_band(t, 0, h, bandwidth, 1.0, rng);
  add_hermitian_band(t, h, h, bandwidth, 1.0, rng);
  for (Index d = -bandwidth; d <= bandwidth; ++d) {
    for (Index i = std::max<Index>(0, -d); i < h && i + d < h; ++i) {
      const Scalar q = rng.complex_normal();
      t.push_back({i, h + i + d, q});
      t.push_back({h + i + d, i, -std::conj(q)});
    }
  }
  Gamma5Matrix out;
  out.matrix = CsrMatrix::from_triplets(n, std::move(t));
  out.gamma5.diag = RealVector::Ones(n);
  out.gamma5.diag.tail(h).setConstant(-1.0);
  return out;
}

Vector make_rhs(Index n, const RhsKind& kind, std::uint64_t seed) {
  if (n < 1) throw Error("rhs: n must be positive");
  if (const auto* u = std::get_if<rhs::UnitVector>(&kind)) {
    if (u->index < 0 || u->index >= n) throw Error("rhs: unit vector index out of range");
    Vector e = Vector::Zero(n);
    e(u->index) = 1.0;
    return e;
  }
  Rng rng(seed);
  if (const auto* rel = std::get_if<rhs::Related>(&kind)) {
    if (rel->base.size() != n) throw Error("rhs: related base has wrong length");
    if (rel->epsilon == 0.0) return rel->base;
    return rel->base + rel->epsilon * rng.normal_vector(n);
  }
  return rng.normal_vector(n);
}

}  // namespace defl
