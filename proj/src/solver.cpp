#include "llab/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace llab {

std::pair<ArrayXr, SolveReport> solve_spd(const ApplyFn& apply,
                                          const ArrayXr& diagonal,
                                          const ArrayXr& rhs, Real tol,
                                          Index max_iter) {
  const Index n = rhs.size();
  if (diagonal.size() != n) {
    throw std::invalid_argument("solve_spd: diagonal/rhs size mismatch");
  }
  if ((diagonal <= 0).any()) {
    throw std::domain_error("solve_spd: preconditioner diagonal must be positive");
  }
  ArrayXr x = ArrayXr::Zero(n);
  SolveReport report;

  const Real b_norm = std::sqrt(rhs.square().sum());
  if (b_norm == 0) {
    report.converged = true;
    return {std::move(x), report};
  }

  ArrayXr r = rhs;
  ArrayXr z = r / diagonal;
  ArrayXr p = z;
  ArrayXr q(n);
  Real rho = (r * z).sum();
  Real res_norm = b_norm;

  // Stagnation window: a healthy CG run keeps shrinking the residual.
  constexpr Index kWindow = 500;
  Real windowed_res = res_norm;

  Index it = 0;
  while (it < max_iter) {
    ++it;
    apply(p, q);
    const Real pq = (p * q).sum();
    if (!(pq > 0)) break;  // loss of positive definiteness
    const Real alpha = rho / pq;
    x += alpha * p;
    r -= alpha * q;
    res_norm = std::sqrt(r.square().sum());

    if (res_norm <= tol * b_norm) {
      apply(x, q);
      r = rhs - q;
      res_norm = std::sqrt(r.square().sum());
      if (res_norm <= tol * b_norm) break;
      z = r / diagonal;
      p = z;
      rho = (r * z).sum();
      continue;
    }
    if (it % kWindow == 0) {
      if (res_norm >= Real(0.98) * windowed_res) break;
      windowed_res = res_norm;
    }

    z = r / diagonal;
    const Real rho_next = (r * z).sum();
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }

  apply(x, q);
  report.relative_residual = std::sqrt((rhs - q).square().sum()) / b_norm;
  report.iterations = it;
  report.converged = report.relative_residual <= tol;
  return {std::move(x), report};
}

}  // namespace llab
