#pragma once

#include <array>
#include <utility>
#include <vector>

#include "llab/types.hpp"

namespace llab {

/// Neighbor stencil on the periodic lattice. AxisAligned gives the 2*dim
/// nearest neighbors; Full adds the four diagonals in 2D (identical to
/// AxisAligned in 1D).
enum class Stencil { AxisAligned, Full };

/// Uniform periodic lattice over an interval (1D) or square (2D) built from
/// unit-length cells, with `points_per_unit` grid points per unit length on
/// each axis. Grid points sit at cell-interior midpoints
///   x_j = (j + 1/2) * h,  h = 1 / points_per_unit,
/// so no point ever lies on a boundary between two unit cells. Flat indices
/// are row-major with axis 0 outermost. Immutable after construction.
class Grid {
 public:
  Grid(int dim, std::vector<int> units, int points_per_unit);

  int dim() const { return dim_; }
  const std::vector<int>& units() const { return units_; }
  int points_per_unit() const { return ppu_; }

  /// Grid spacing h = 1 / points_per_unit.
  Real spacing() const { return Real(1) / Real(ppu_); }

  /// Number of grid points along `axis`.
  Index extent(int axis) const { return Index(units_[axis]) * ppu_; }

  /// Physical length of the domain along `axis` (= units, cells have unit length).
  Real axis_length(int axis) const { return Real(units_[axis]); }

  /// Total number of grid points.
  Index num_points() const { return num_points_; }

  /// Total number of unit cells.
  Index num_cells() const;

  Index flat_index(const std::array<Index, 2>& multi) const;
  std::array<Index, 2> multi_index(Index flat) const;

  /// Physical coordinates of a grid point, midpoint-offset convention.
  std::array<Real, 2> coordinates(Index flat) const;

  /// Flat index of the unit cell containing the given grid point.
  Index cell_of_point(Index flat) const;

  /// Periodic wrap of a (possibly out-of-range) index along `axis`.
  Index wrap(int axis, Index i) const;

  /// Distinct periodic neighbors of `flat` under the given stencil, in
  /// deterministic offset order with duplicates (from wrap on tiny extents)
  /// removed. Throws on out-of-range index.
  std::vector<Index> neighbors(Index flat, Stencil stencil) const;

  /// Shortest periodic Euclidean distance between two points given by
  /// physical coordinates.
  Real periodic_distance(const std::array<Real, 2>& a,
                         const std::array<Real, 2>& b) const;

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && units_ == other.units_ && ppu_ == other.ppu_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int dim_;
  std::vector<int> units_;
  int ppu_;
  Index num_points_;
};

/// Validating factory for Grid; rejects dim outside {1,2} and nonpositive sizes.
Grid make_grid(int dim, const std::vector<int>& units, int points_per_unit);

/// Real values attached to the points of a Grid, stored row-major.
struct ScalarField {
  ScalarField(Grid grid, ArrayXr values);

  /// Field with all points set to `value`.
  static ScalarField constant(const Grid& grid, Real value);

  Grid grid;
  ArrayXr values;
};

/// Periodic midpoint-rule integral h^dim * sum(values); exact for constants.
Real integrate(const ScalarField& field);

/// L2 norm and inner product under the midpoint-rule measure.
Real norm_l2(const ScalarField& field);
Real inner(const ScalarField& f, const ScalarField& g);

/// First index (row-major order) attaining the extreme value; ties broken by
/// smallest flat index. Throws if the field contains a non-finite value.
std::pair<Index, Real> argmin_field(const ScalarField& field);
std::pair<Index, Real> argmax_field(const ScalarField& field);

}  // namespace llab
