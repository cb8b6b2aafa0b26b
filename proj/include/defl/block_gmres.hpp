#pragma once

#include <vector>

#include "defl/gmres_dr.hpp"

namespace defl {

struct BlockDrConfig {
  Index m = 170;  ///< total subspace dimension per cycle
  Index p = 5;    ///< block size
  Index k = 10;
  double rtol = 1e-6;
  Count max_matvecs = 100000;
};

struct BlockSolveResult {
  Matrix x;
  DeflationBasis basis;  ///< A V[:, :k] = V Hbar with V n x (k+p); empty for projection solves
  SolveReport report;
};

/// Rejects configurations whose block Krylov extension per cycle gives
/// each right-hand side fewer than one new direction.
void validate_block_config(Index m, Index p, Index k);

/// Block GMRES with deflated restarting on the p columns of B.
BlockSolveResult block_gmres_dr_solve(const LinearOperator& a, const Matrix& b, const BlockDrConfig& config);

/// Block GMRES(m)-Proj(k): per cycle, minres projection of every column
/// over the first k deflation vectors, then one block GMRES(m) cycle.
BlockSolveResult bl_gmres_proj_solve(const LinearOperator& a, const DeflationBasis& basis, const Matrix& b,
                                     Index m, Index k, double rtol, Count max_matvecs);

struct BlockGroupConfig {
  BlockDrConfig first;    ///< block GMRES-DR on the first p columns
  Index m_proj = 160;     ///< subspace dimension for later groups
  Count group_budget = 100000;
};

struct BlockGroupRun {
  std::vector<BlockSolveResult> groups;
  Count total_matvecs = 0;
  bool all_converged = true;
};

/// Splits B into groups of p columns in input order (the last group may be
/// narrower). The first group runs block GMRES-DR; the remaining groups
/// reuse its basis with block GMRES-Proj. Stops after the first group if it
/// fails to converge, since no trustworthy basis exists then.
BlockGroupRun solve_in_groups(const LinearOperator& a, const Matrix& b, const BlockGroupConfig& config);

}  // namespace defl
