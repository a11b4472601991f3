#pragma once

#include <cstdint>
#include <vector>

#include "llab/operator.hpp"
#include "llab/types.hpp"

namespace llab {

/// Discrete eigenpair. psi is normalized to ||psi||_2 = 1 under the
/// midpoint-rule inner product and sign-fixed so its largest-magnitude
/// component is positive. residual = ||H psi - lambda psi||_2 in the same
/// norm, recomputed from the operator rather than taken from solver
/// internals.
struct EigenPair {
  Real lambda = 0;
  ScalarField psi;
  Real residual = 0;
};

struct EigsOptions {
  Real tol = 1e-8;            // residual contract per returned pair
  Real inner_tol = 1e-12;     // relative residual of the shifted CG solves
  Index inner_max_iter = 200000;
  Index max_restarts = 12;    // fresh-start Lanczos sweeps before giving up
  std::uint64_t start_seed = 0x1a2c3e5a7c9eULL;  // deterministic start vectors
};

/// Smallest k eigenpairs of H by shift-invert Lanczos with full
/// reorthogonalization, deflation of converged pairs, and restarts. The
/// shift is min V (guaranteed at or below the spectrum); on breakdown of the
/// shifted solves it falls back to min V - 0.1. Throws on non-convergence
/// within the restart budget or if k is larger than half the grid.
std::vector<EigenPair> smallest_eigenpairs(const DiscreteOperator& op, Index k,
                                           const EigsOptions& opts = {});

/// All eigenpairs with lambda <= e_max, found by growing k geometrically
/// until the spectrum passes e_max (capped at k_cap pairs).
std::vector<EigenPair> eigenpairs_below(const DiscreteOperator& op, Real e_max,
                                        Index k_cap,
                                        const EigsOptions& opts = {});

/// ||H psi - lambda psi||_2 recomputed from scratch (midpoint-rule norm).
Real eigen_residual(const DiscreteOperator& op, const EigenPair& pair);

/// Fundamental eigenvalue of the unit-width finite square well of depth nu:
/// the unique root of cos(sqrt(lambda)) = sqrt(lambda/nu) in (0, pi^2/4),
/// located by bisection to 1e-12.
Real square_well_eigenvalue(Real nu);

}  // namespace llab
