#pragma once

#include <optional>
#include <vector>

#include "defl/bicgstab.hpp"
#include "defl/projections.hpp"

namespace defl {

/// Project before cycle c (1-based) when c = phase (mod frequency).
struct ProjectionSchedule {
  Index frequency = 1;
  Index phase = 1;

  bool before_cycle(Index cycle) const {
    return ((cycle - phase) % frequency + frequency) % frequency == 0;
  }
  void validate() const {
    if (frequency < 1) throw Error("projection schedule: frequency must be >= 1");
  }
};

/// Operator plus the frozen deflation data shared by the solves of one
/// sequence of right-hand sides. Solutions are appended in solve order.
class MultiRhsSession {
 public:
  MultiRhsSession(const LinearOperator& a, DeflationBasis basis);

  const LinearOperator& op() const { return a_; }
  const DeflationBasis& basis() const { return basis_; }
  const std::optional<LeftRightBasis>& left_right() const { return left_right_; }
  void set_left_right(LeftRightBasis lr) { left_right_ = std::move(lr); }

  const std::vector<PriorSolution>& solutions() const { return solutions_; }
  const std::vector<SolveReport>& reports() const { return reports_; }
  void add_solution(PriorSolution s, SolveReport report);

 private:
  const LinearOperator& a_;
  DeflationBasis basis_;
  std::optional<LeftRightBasis> left_right_;
  std::vector<PriorSolution> solutions_;
  std::vector<SolveReport> reports_;
};

struct GmresProjConfig {
  Index m = 15;
  Index k = -1;  ///< deflation vectors used; -1 = all in the basis, 0 = none
  ProjectionSchedule schedule;
  double rtol = 1e-6;
  Count max_matvecs = 100000;
  bool related_rhs = false;       ///< project over earlier solutions first
  bool joint_solution_projection = false;
};

/// GMRES(m)-Proj(k): minres projection (per schedule) alternating with
/// GMRES(m) cycles. The result is appended to the session.
SolveResult gmres_proj_solve(MultiRhsSession& session, const Vector& b, const GmresProjConfig& config);

/// Minres projection, then BiCGStab. At every restart point (a matvec
/// count) BiCGStab halts, the projection is repeated and BiCGStab starts
/// afresh from the projected iterate. k = 0 skips projection.
SolveResult bicgstab_proj_solve(MultiRhsSession& session, const Vector& b, Index k, double rtol,
                                Count max_matvecs, std::vector<Count> restart_points = {});

/// One left-right projection with the session's LeftRightBasis, then BiCGStab.
SolveResult bicgstab_lr_solve(MultiRhsSession& session, const Vector& b, double rtol, Count max_matvecs);

}  // namespace defl
