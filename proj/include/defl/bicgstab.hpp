#pragma once

#include "defl/gmres.hpp"

namespace defl {

/// Unpreconditioned BiCGStab with shadow vector r_hat = r0.
SolveResult bicgstab_solve(const LinearOperator& a, const Vector& x0, const Vector& b, double rtol,
                           Count max_matvecs);

namespace detail {

enum class BicgstabStop { converged, stopped, budget, breakdown };

/// Runs BiCGStab from the current (x, r) until ||r|| <= target, the
/// report's matvec count reaches stop_at (checked between iterations),
/// the budget is spent or the recurrence breaks down. One history entry
/// per matvec: ||s|| after the first product of an iteration, ||r|| after
/// the second. `norm` holds ||r|| on entry and on return.
BicgstabStop bicgstab_run(const LinearOperator& a, Vector& x, Vector& r, double& norm, double target,
                          Count stop_at, Count max_matvecs, SolveReport& report);

}  // namespace detail
}  // namespace defl
