#include "llab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace llab {

Grid::Grid(int dim, std::vector<int> units, int points_per_unit)
    : dim_(dim), units_(std::move(units)), ppu_(points_per_unit) {
  if (dim_ != 1 && dim_ != 2) {
    throw std::invalid_argument("Grid: dim must be 1 or 2");
  }
  if (Index(units_.size()) != dim_) {
    throw std::invalid_argument("Grid: units must have one entry per axis");
  }
  for (int u : units_) {
    if (u < 1) throw std::invalid_argument("Grid: units must be positive");
  }
  if (ppu_ < 1) {
    throw std::invalid_argument("Grid: points_per_unit must be positive");
  }
  num_points_ = 1;
  for (int a = 0; a < dim_; ++a) num_points_ *= extent(a);
}

Grid make_grid(int dim, const std::vector<int>& units, int points_per_unit) {
  // A single per-axis count broadcasts across all axes (square domains).
  if (dim == 2 && units.size() == 1) {
    return Grid(dim, {units[0], units[0]}, points_per_unit);
  }
  return Grid(dim, units, points_per_unit);
}

Index Grid::num_cells() const {
  Index n = 1;
  for (int u : units_) n *= u;
  return n;
}

Index Grid::flat_index(const std::array<Index, 2>& multi) const {
  if (dim_ == 1) return multi[0];
  return multi[0] * extent(1) + multi[1];
}

std::array<Index, 2> Grid::multi_index(Index flat) const {
  if (dim_ == 1) return {flat, 0};
  const Index e1 = extent(1);
  return {flat / e1, flat % e1};
}

std::array<Real, 2> Grid::coordinates(Index flat) const {
  const auto m = multi_index(flat);
  const Real h = spacing();
  std::array<Real, 2> x{0, 0};
  for (int a = 0; a < dim_; ++a) x[a] = (Real(m[a]) + Real(0.5)) * h;
  return x;
}

Index Grid::cell_of_point(Index flat) const {
  const auto m = multi_index(flat);
  // Point j lies in cell j / points_per_unit along each axis.
  if (dim_ == 1) return m[0] / ppu_;
  return (m[0] / ppu_) * units_[1] + (m[1] / ppu_);
}

Index Grid::wrap(int axis, Index i) const {
  const Index e = extent(axis);
  Index r = i % e;
  if (r < 0) r += e;
  return r;
}

std::vector<Index> Grid::neighbors(Index flat, Stencil stencil) const {
  if (flat < 0 || flat >= num_points_) {
    throw std::out_of_range("Grid::neighbors: index out of range");
  }
  const auto m = multi_index(flat);
  std::vector<Index> out;
  auto push_unique = [&](Index idx) {
    for (Index seen : out) {
      if (seen == idx) return;
    }
    out.push_back(idx);
  };
  if (dim_ == 1) {
    push_unique(wrap(0, m[0] - 1));
    push_unique(wrap(0, m[0] + 1));
    return out;
  }
  if (stencil == Stencil::AxisAligned) {
    push_unique(flat_index({wrap(0, m[0] - 1), m[1]}));
    push_unique(flat_index({wrap(0, m[0] + 1), m[1]}));
    push_unique(flat_index({m[0], wrap(1, m[1] - 1)}));
    push_unique(flat_index({m[0], wrap(1, m[1] + 1)}));
  } else {
    for (Index d0 = -1; d0 <= 1; ++d0) {
      for (Index d1 = -1; d1 <= 1; ++d1) {
        if (d0 == 0 && d1 == 0) continue;
        push_unique(flat_index({wrap(0, m[0] + d0), wrap(1, m[1] + d1)}));
      }
    }
  }
  return out;
}

Real Grid::periodic_distance(const std::array<Real, 2>& a,
                             const std::array<Real, 2>& b) const {
  Real sq = 0;
  for (int ax = 0; ax < dim_; ++ax) {
    const Real len = axis_length(ax);
    Real d = std::abs(a[ax] - b[ax]);
    d = std::min(d, len - d);
    sq += d * d;
  }
  return std::sqrt(sq);
}

ScalarField::ScalarField(Grid g, ArrayXr v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.num_points()) {
    throw std::invalid_argument("ScalarField: values length must equal grid point count");
  }
}

ScalarField ScalarField::constant(const Grid& grid, Real value) {
  return ScalarField(grid, ArrayXr::Constant(grid.num_points(), value));
}

Real integrate(const ScalarField& field) {
  const Real h = field.grid.spacing();
  Real cell = h;
  for (int a = 1; a < field.grid.dim(); ++a) cell *= h;
  return cell * field.values.sum();
}

Real norm_l2(const ScalarField& field) {
  const Real h = field.grid.spacing();
  Real cell = h;
  for (int a = 1; a < field.grid.dim(); ++a) cell *= h;
  return std::sqrt(cell * field.values.square().sum());
}

Real inner(const ScalarField& f, const ScalarField& g) {
  if (f.grid != g.grid) throw std::invalid_argument("inner: fields on different grids");
  const Real h = f.grid.spacing();
  Real cell = h;
  for (int a = 1; a < f.grid.dim(); ++a) cell *= h;
  return cell * (f.values * g.values).sum();
}

namespace {

template <typename Cmp>
std::pair<Index, Real> extreme(const ScalarField& field, Cmp better) {
  if (field.values.size() == 0) {
    throw std::invalid_argument("argmin/argmax: empty field");
  }
  Index best = 0;
  Real best_v = field.values[0];
  for (Index i = 0; i < field.values.size(); ++i) {
    const Real v = field.values[i];
    if (!std::isfinite(v)) {
      throw std::domain_error("argmin/argmax: non-finite field value");
    }
    if (better(v, best_v)) {
      best = i;
      best_v = v;
    }
  }
  return {best, best_v};
}

}  // namespace

std::pair<Index, Real> argmin_field(const ScalarField& field) {
  return extreme(field, [](Real a, Real b) { return a < b; });
}

std::pair<Index, Real> argmax_field(const ScalarField& field) {
  return extreme(field, [](Real a, Real b) { return a > b; });
}

}  // namespace llab
