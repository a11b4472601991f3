#pragma once

#include <functional>
#include <utility>

#include "llab/types.hpp"

namespace llab {

struct SolveReport {
  Index iterations = 0;
  Real relative_residual = 0;
  bool converged = false;
};

/// Operator application y = A x on raw value arrays.
using ApplyFn = std::function<void(const ArrayXr&, ArrayXr&)>;

/// Preconditioned conjugate gradients for a symmetric positive definite
/// operator, with diagonal (Jacobi) preconditioning. Stops when
/// ||A x - rhs||_2 <= tol * ||rhs||_2 (verified against a freshly computed
/// residual, not just the recurrence), on stagnation, or at max_iter.
/// A zero rhs returns the zero solution immediately.
std::pair<ArrayXr, SolveReport> solve_spd(const ApplyFn& apply,
                                          const ArrayXr& diagonal,
                                          const ArrayXr& rhs, Real tol,
                                          Index max_iter);

}  // namespace llab
