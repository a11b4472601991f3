#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "llab/grid.hpp"
#include "llab/types.hpp"

namespace llab {

/// Generator provenance carried alongside the cell values.
struct PotentialMeta {
  std::string generator;
  std::map<std::string, Real> params;
  std::uint64_t seed = 0;
};

/// Piecewise-constant potential: one nonnegative value per unit cell,
/// row-major over cells. At least one value must be positive, otherwise the
/// landscape problem is not well posed.
struct Potential {
  int dim = 1;
  std::vector<int> units;
  ArrayXr cell_values;
  PotentialMeta meta;
};

/// Throws unless the invariants above hold (used by generators and loaders).
void validate_potential(const Potential& p);

/// Values iid uniform on [lo, hi).
Potential gen_uniform(const std::vector<int>& units, Real lo, Real hi,
                      std::uint64_t seed);

/// Values independently v1 with probability p1, else v0.
Potential gen_bernoulli(const std::vector<int>& units, Real v0, Real v1, Real p1,
                        std::uint64_t seed);

/// Correlated 1D field: filter white Gaussian noise in frequency space with
/// the symmetric multiplier q_i = q_{n-i} = sigma * exp(-d * i), 0 <= i <= n/2,
/// then square the (analytically real) result componentwise.
Potential gen_correlated_1d(int n, Real sigma, Real d, std::uint64_t seed);

/// Correlated 2D field on n x n cells: multiplier sigma where
/// d * |t_wrapped| <= 1 and zero elsewhere, with t_wrapped the symmetric
/// frequency representative min(t_i, n - t_i) per axis.
Potential gen_correlated_2d(int n, Real sigma, Real d, std::uint64_t seed);

/// Evaluate the piecewise-constant potential at the grid points. The grid
/// must have the same dim and per-axis unit counts as the potential.
ScalarField sample_on_grid(const Potential& p, const Grid& grid);

}  // namespace llab
