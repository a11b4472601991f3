#pragma once

#include <array>
#include <vector>

#include "llab/grid.hpp"
#include "llab/types.hpp"

namespace llab {

/// A local minimum of the effective potential, ranked by increasing value
/// (rank ties broken by smallest flat index). basin_label equals rank; the
/// watershed transform uses the same labels.
struct Well {
  Index min_index = 0;
  std::array<Real, 2> min_location{0, 0};
  Real w_min = 0;
  int rank = 0;
  int basin_label = 0;
};

/// Connected component of a sublevel set {W <= energy} under axis-aligned
/// periodic adjacency; members are sorted flat indices.
struct Region {
  std::vector<Index> members;
  Real energy = 0;
  int seed_well_rank = 0;
};

/// Watershed labeling: one basin label per grid point (the label of a Well),
/// with crest points (adjacent to two or more basins when first reached)
/// flagged and assigned the smallest adjacent label so the labels still
/// partition the grid.
struct BasinMap {
  Grid grid;
  std::vector<int> labels;
  std::vector<char> crest_mask;
  int num_basins = 0;
};

/// Strict local minima of the field: value less than all stencil neighbors
/// (2 in 1D, the 8 nearest in 2D), periodic. Sorted by increasing value.
/// Constant fields have no strict minima.
std::vector<Well> local_minima(const ScalarField& w);

/// Flood fill of {W <= energy} from seed_index (axis-aligned adjacency).
/// Throws if the seed itself sits above the level.
Region sublevel_component(const ScalarField& w, Index seed_index, Real energy);

/// Priority-flood watershed: wells seed their labels, remaining points are
/// absorbed in increasing (W, flat index) order. Throws on an empty well list.
BasinMap watershed_basins(const ScalarField& w, const std::vector<Well>& wells);

/// Graph distance to the sublevel set S = {W <= lambda + delta} in the
/// degenerate Agmon-type metric with density sqrt((W - lambda)_+): edge
/// weight = Euclidean length x mean endpoint density. 2D edges include
/// diagonals. h = 0 on S; throws if S is empty.
ScalarField w_distance(const ScalarField& w, Real lambda, Real delta);

}  // namespace llab
