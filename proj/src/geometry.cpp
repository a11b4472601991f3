#include "llab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace llab {

std::vector<Well> local_minima(const ScalarField& w) {
  const Grid& grid = w.grid;
  const Stencil stencil = grid.dim() == 1 ? Stencil::AxisAligned : Stencil::Full;
  std::vector<Well> wells;
  for (Index j = 0; j < grid.num_points(); ++j) {
    const Real wj = w.values[j];
    bool is_min = true;
    for (Index nb : grid.neighbors(j, stencil)) {
      if (!(wj < w.values[nb])) {
        is_min = false;
        break;
      }
    }
    if (is_min) {
      Well well;
      well.min_index = j;
      well.min_location = grid.coordinates(j);
      well.w_min = wj;
      wells.push_back(well);
    }
  }
  std::sort(wells.begin(), wells.end(), [](const Well& a, const Well& b) {
    if (a.w_min != b.w_min) return a.w_min < b.w_min;
    return a.min_index < b.min_index;
  });
  for (std::size_t i = 0; i < wells.size(); ++i) {
    wells[i].rank = int(i) + 1;
    wells[i].basin_label = wells[i].rank;
  }
  return wells;
}

Region sublevel_component(const ScalarField& w, Index seed_index, Real energy) {
  const Grid& grid = w.grid;
  if (seed_index < 0 || seed_index >= grid.num_points()) {
    throw std::out_of_range("sublevel_component: seed index out of range");
  }
  if (!(w.values[seed_index] <= energy)) {
    throw std::invalid_argument("sublevel_component: seed lies above the energy level");
  }
  std::vector<char> visited(grid.num_points(), 0);
  std::vector<Index> stack{seed_index};
  visited[seed_index] = 1;
  Region region;
  region.energy = energy;
  while (!stack.empty()) {
    const Index j = stack.back();
    stack.pop_back();
    region.members.push_back(j);
    for (Index nb : grid.neighbors(j, Stencil::AxisAligned)) {
      if (!visited[nb] && w.values[nb] <= energy) {
        visited[nb] = 1;
        stack.push_back(nb);
      }
    }
  }
  std::sort(region.members.begin(), region.members.end());
  return region;
}

BasinMap watershed_basins(const ScalarField& w, const std::vector<Well>& wells) {
  if (wells.empty()) {
    throw std::invalid_argument("watershed_basins: empty well list");
  }
  const Grid& grid = w.grid;
  const Index n = grid.num_points();
  BasinMap map{grid, std::vector<int>(n, 0), std::vector<char>(n, 0),
               int(wells.size())};

  using Entry = std::pair<Real, Index>;  // (W value, flat index), min first
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

  for (const Well& well : wells) {
    map.labels[well.min_index] = well.basin_label;
  }
  for (const Well& well : wells) {
    for (Index nb : grid.neighbors(well.min_index, Stencil::AxisAligned)) {
      if (map.labels[nb] == 0) queue.emplace(w.values[nb], nb);
    }
  }
  while (!queue.empty()) {
    const auto [wj, j] = queue.top();
    queue.pop();
    if (map.labels[j] != 0) continue;
    int first_label = 0;
    bool crest = false;
    for (Index nb : grid.neighbors(j, Stencil::AxisAligned)) {
      const int lab = map.labels[nb];
      if (lab == 0) continue;
      if (first_label == 0) {
        first_label = lab;
      } else if (lab != first_label) {
        crest = true;
        first_label = std::min(first_label, lab);
      }
    }
    map.labels[j] = first_label;
    map.crest_mask[j] = crest ? 1 : 0;
    for (Index nb : grid.neighbors(j, Stencil::AxisAligned)) {
      if (map.labels[nb] == 0) queue.emplace(w.values[nb], nb);
    }
  }
  return map;
}

ScalarField w_distance(const ScalarField& w, Real lambda, Real delta) {
  if (delta < 0) throw std::invalid_argument("w_distance: delta must be >= 0");
  const Grid& grid = w.grid;
  const Index n = grid.num_points();
  const Real level = lambda + delta;

  ArrayXr density(n);
  for (Index j = 0; j < n; ++j) {
    density[j] = std::sqrt(std::max(w.values[j] - lambda, Real(0)));
  }

  const Real inf = std::numeric_limits<Real>::infinity();
  ArrayXr dist = ArrayXr::Constant(n, inf);
  using Entry = std::pair<Real, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  for (Index j = 0; j < n; ++j) {
    if (w.values[j] <= level) {
      dist[j] = 0;
      queue.emplace(Real(0), j);
    }
  }
  if (queue.empty()) {
    throw std::invalid_argument("w_distance: sublevel set {W <= lambda+delta} is empty");
  }

  const Real h = grid.spacing();
  const Real h_diag = h * std::numbers::sqrt2_v<Real>;
  const Stencil stencil = grid.dim() == 1 ? Stencil::AxisAligned : Stencil::Full;
  while (!queue.empty()) {
    const auto [dj, j] = queue.top();
    queue.pop();
    if (dj > dist[j]) continue;
    const auto mj = grid.multi_index(j);
    for (Index nb : grid.neighbors(j, stencil)) {
      const auto mn = grid.multi_index(nb);
      const bool diagonal = grid.dim() == 2 && mj[0] != mn[0] && mj[1] != mn[1];
      const Real len = diagonal ? h_diag : h;
      const Real weight = len * (density[j] + density[nb]) / Real(2);
      const Real cand = dj + weight;
      if (cand < dist[nb]) {
        dist[nb] = cand;
        queue.emplace(cand, nb);
      }
    }
  }
  return ScalarField(grid, std::move(dist));
}

}  // namespace llab
