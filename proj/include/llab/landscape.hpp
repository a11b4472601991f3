#pragma once

#include <utility>

#include "llab/operator.hpp"
#include "llab/solver.hpp"
#include "llab/spectra.hpp"
#include "llab/types.hpp"

namespace llab {

/// Landscape function u (solution of H u = 1) together with the effective
/// potential W = 1/u. u is strictly positive on every valid instance; the
/// constructor path in compute_landscape enforces this rather than clamping.
struct LandscapePair {
  ScalarField u;
  ScalarField w;
  SolveReport solve_report;
};

/// Solve H u = 1 to the given relative residual and form W = 1/u pointwise.
/// Throws on solver non-convergence or if any u_j <= 0.
LandscapePair compute_landscape(const DiscreteOperator& op, Real tol = 1e-10,
                                Index max_iter = 200000);

/// (inf V, inf W): the two spectral lower bounds.
std::pair<Real, Real> lower_bounds(const ScalarField& v_field,
                                   const ScalarField& w_field);

/// Largest violation of |psi_j| <= lambda u_j ||psi||_inf over the grid
/// (negative when the bound holds with room to spare).
Real check_landscape_bound(const ScalarField& u, const EigenPair& pair);

/// (L + W) phi with L in flux form,
///   (L phi)_j = -(1/u_j^2) sum_axes [ub2_{j+1/2} (phi_{j+1} - phi_j)
///                                    - ub2_{j-1/2} (phi_j - phi_{j-1})] / h^2,
/// where ub2 at a half-point is the mean of the adjacent u^2 values.
ScalarField apply_conjugated(const LandscapePair& pair, const ScalarField& phi);

/// ||H(u phi) - u ((L + W) phi)||_2 / ||phi||_2 — the conjugation identity
/// defect; zero in exact arithmetic for constant phi, O(h^2) for smooth phi.
/// `op` must be the operator the pair was computed from.
Real conjugated_residual(const DiscreteOperator& op, const LandscapePair& pair,
                         const ScalarField& phi);

}  // namespace llab
