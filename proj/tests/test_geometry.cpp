#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "llab/geometry.hpp"
#include "llab/landscape.hpp"
#include "llab/potential.hpp"
#include "llab/rng.hpp"

using namespace llab;

namespace {

ScalarField line_field(const std::vector<Real>& values) {
  const Grid g = make_grid(1, {int(values.size())}, 1);
  ArrayXr v(Index(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[Index(i)] = values[i];
  return ScalarField(g, v);
}

LandscapePair landscape_for(const Potential& p, int r) {
  const Grid g = make_grid(p.dim, p.units, r);
  const DiscreteOperator op(g, sample_on_grid(p, g));
  return compute_landscape(op);
}

// Independent BFS re-verification of a region: connected under axis-aligned
// periodic adjacency and level-consistent.
bool region_is_valid(const ScalarField& w, const Region& region) {
  if (region.members.empty()) return false;
  const std::set<Index> member_set(region.members.begin(), region.members.end());
  for (Index j : region.members) {
    if (!(w.values[j] <= region.energy)) return false;
  }
  std::set<Index> reached{region.members.front()};
  std::vector<Index> stack{region.members.front()};
  while (!stack.empty()) {
    const Index j = stack.back();
    stack.pop_back();
    for (Index nb : w.grid.neighbors(j, Stencil::AxisAligned)) {
      if (member_set.count(nb) && !reached.count(nb)) {
        reached.insert(nb);
        stack.push_back(nb);
      }
    }
  }
  if (reached.size() != member_set.size()) return false;
  // Maximality: no neighbor of the region sits at or below the level.
  for (Index j : region.members) {
    for (Index nb : w.grid.neighbors(j, Stencil::AxisAligned)) {
      if (!member_set.count(nb) && w.values[nb] <= region.energy) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("local minima of the 5-point line") {
  const ScalarField w = line_field({5, 1, 4, 2, 3});
  const auto wells = local_minima(w);
  REQUIRE(wells.size() == 2);
  CHECK(wells[0].min_index == 1);
  CHECK(wells[0].w_min == 1.0);
  CHECK(wells[0].rank == 1);
  CHECK(wells[1].min_index == 3);
  CHECK(wells[1].w_min == 2.0);
  CHECK(wells[1].rank == 2);
  CHECK(wells[0].min_location[0] == doctest::Approx(1.5));
}

TEST_CASE("constant field has no strict minima") {
  const ScalarField w = line_field({2, 2, 2, 2});
  CHECK(local_minima(w).empty());
}

TEST_CASE("rank ties break by smallest flat index") {
  const ScalarField w = line_field({9, 1, 9, 9, 1, 9, 8, 9});
  const auto wells = local_minima(w);
  REQUIRE(wells.size() == 3);
  CHECK(wells[0].min_index == 1);
  CHECK(wells[1].min_index == 4);
  CHECK(wells[2].min_index == 6);
}

TEST_CASE("2D minima counts on the 40x40 uniform [0,16] ensemble") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Potential p = gen_uniform({40, 40}, 0.0, 16.0, 400 + seed);
    const LandscapePair pair = landscape_for(p, 5);
    const auto wells = local_minima(pair.w);
    MESSAGE("seed " << seed << ": " << wells.size() << " minima");
    CHECK(wells.size() >= 150);
    CHECK(wells.size() <= 400);
  }
}

TEST_CASE("sublevel components on the 5-point line") {
  const ScalarField w = line_field({5, 1, 4, 2, 3});
  const Region r1 = sublevel_component(w, 1, 3.0);
  CHECK(r1.members == std::vector<Index>{1});
  const Region r2 = sublevel_component(w, 3, 3.0);
  CHECK(r2.members == std::vector<Index>{3, 4});
  CHECK_THROWS(sublevel_component(w, 0, 3.0));
  CHECK_THROWS(sublevel_component(w, 99, 3.0));
}

TEST_CASE("sublevel extremes: single point and whole grid") {
  const ScalarField w = line_field({5, 1, 4, 2, 3});
  const Region tiny = sublevel_component(w, 1, 1.5);
  CHECK(tiny.members == std::vector<Index>{1});
  const Region all = sublevel_component(w, 1, 5.0);
  CHECK(Index(all.members.size()) == w.grid.num_points());
}

TEST_CASE("regions re-verified by independent BFS") {
  const Potential p = gen_uniform({64}, 0.0, 4.0, 5);
  const LandscapePair pair = landscape_for(p, 5);
  const auto wells = local_minima(pair.w);
  REQUIRE(!wells.empty());
  for (const Well& well : wells) {
    const Region region =
        sublevel_component(pair.w, well.min_index, 1.875 * well.w_min);
    CHECK(region_is_valid(pair.w, region));
    CHECK(std::binary_search(region.members.begin(), region.members.end(),
                             well.min_index));
  }
}

TEST_CASE("watershed: single well labels everything") {
  const ScalarField w = line_field({3, 1, 2, 4});
  const auto wells = local_minima(w);
  REQUIRE(wells.size() == 1);
  const BasinMap map = watershed_basins(w, wells);
  for (Index j = 0; j < 4; ++j) {
    CHECK(map.labels[j] == 1);
    CHECK(map.crest_mask[j] == 0);
  }
}

TEST_CASE("watershed: two-well hand simulation") {
  const ScalarField w = line_field({5, 1, 4, 2, 3});
  const BasinMap map = watershed_basins(w, local_minima(w));
  CHECK(map.labels == std::vector<int>{1, 1, 1, 2, 2});
  CHECK(map.crest_mask == std::vector<char>{1, 0, 1, 0, 0});
  CHECK(map.num_basins == 2);
}

TEST_CASE("watershed partitions the Bernoulli ensemble into basins") {
  const Potential p = gen_bernoulli({80, 80}, 0.0, 4.0, 0.3, 7);
  const LandscapePair pair = landscape_for(p, 5);
  const auto wells = local_minima(pair.w);
  const BasinMap map = watershed_basins(pair.w, wells);

  MESSAGE("basins: " << wells.size());
  CHECK(wells.size() >= 100);
  CHECK(wells.size() <= 900);

  // Labels partition the grid; every well sits in its own basin.
  std::set<int> seen;
  for (Index j = 0; j < pair.w.grid.num_points(); ++j) {
    CHECK(map.labels[j] >= 1);
    CHECK(map.labels[j] <= int(wells.size()));
    seen.insert(map.labels[j]);
  }
  CHECK(seen.size() == wells.size());
  for (const Well& well : wells) {
    CHECK(map.labels[well.min_index] == well.basin_label);
  }
}

TEST_CASE("watershed label regions are connected") {
  const Potential p = gen_uniform({16, 16}, 0.0, 8.0, 3);
  const LandscapePair pair = landscape_for(p, 4);
  const auto wells = local_minima(pair.w);
  const BasinMap map = watershed_basins(pair.w, wells);
  const Grid& g = pair.w.grid;

  for (const Well& well : wells) {
    // BFS over same-label points from the well must reach the whole label.
    std::set<Index> reached{well.min_index};
    std::vector<Index> stack{well.min_index};
    while (!stack.empty()) {
      const Index j = stack.back();
      stack.pop_back();
      for (Index nb : g.neighbors(j, Stencil::AxisAligned)) {
        if (map.labels[nb] == well.basin_label && !reached.count(nb)) {
          reached.insert(nb);
          stack.push_back(nb);
        }
      }
    }
    std::size_t label_count = 0;
    for (Index j = 0; j < g.num_points(); ++j) {
      if (map.labels[j] == well.basin_label) ++label_count;
    }
    CHECK(reached.size() == label_count);
  }
  CHECK_THROWS(watershed_basins(pair.w, {}));
}

TEST_CASE("w_distance: hand Dijkstra on the 5-point barrier") {
  const ScalarField w = line_field({0, 0, 4, 4, 0});
  const ScalarField h = w_distance(w, 0.0, 0.0);
  CHECK(h.values[0] == 0.0);
  CHECK(h.values[1] == 0.0);
  CHECK(h.values[4] == 0.0);
  CHECK(h.values[2] == doctest::Approx(1.0));
  CHECK(h.values[3] == doctest::Approx(1.0));
}

TEST_CASE("w_distance: S covering everything gives h = 0") {
  const ScalarField w = line_field({1, 2, 3, 2});
  const ScalarField h = w_distance(w, 3.0, 0.0);
  CHECK(h.values.maxCoeff() == 0.0);
  CHECK_THROWS(w_distance(w, 0.0, 0.5));  // S empty below min W
}

TEST_CASE("w_distance: monotone in lambda and triangle-consistent") {
  const Potential p = gen_uniform({32}, 0.0, 4.0, 9);
  const LandscapePair pair = landscape_for(p, 5);
  const Real w_min = pair.w.values.minCoeff();
  const ScalarField h1 = w_distance(pair.w, w_min + 0.2, 0.0);
  const ScalarField h2 = w_distance(pair.w, w_min + 0.6, 0.0);
  for (Index j = 0; j < h1.values.size(); ++j) {
    CHECK(h2.values[j] <= h1.values[j] + 1e-12);
  }

  const Grid& g = pair.w.grid;
  const Real spacing = g.spacing();
  for (Index j = 0; j < g.num_points(); ++j) {
    for (Index nb : g.neighbors(j, Stencil::AxisAligned)) {
      const Real da = std::sqrt(std::max(pair.w.values[j] - (w_min + 0.2), 0.0));
      const Real db = std::sqrt(std::max(pair.w.values[nb] - (w_min + 0.2), 0.0));
      const Real weight = spacing * (da + db) / 2;
      CHECK(std::abs(h1.values[j] - h1.values[nb]) <= weight + 1e-12);
    }
  }
}

TEST_CASE("2D w_distance uses diagonal edges") {
  const Grid g = make_grid(2, {4, 4}, 1);
  ArrayXr v = ArrayXr::Constant(16, 4.0);
  v[g.flat_index({0, 0})] = 0.0;
  const ScalarField w(g, v);
  const ScalarField h = w_distance(w, 0.0, 0.0);
  // Diagonal step from the source: sqrt(2) * (0 + 2)/2; the axis-aligned
  // route would cost 1 + 2.
  CHECK(h.values[g.flat_index({1, 1})] == doctest::Approx(std::numbers::sqrt2));
  CHECK(h.values[g.flat_index({1, 0})] == doctest::Approx(1.0));
}

TEST_CASE("eigenfunction decay tracks the W-distance (first eigenpair)") {
  const Potential p = gen_uniform({128}, 0.0, 4.0, 77);
  const Grid g = make_grid(1, {128}, 5);
  const DiscreteOperator op(g, sample_on_grid(p, g));
  const LandscapePair pair = compute_landscape(op);
  const auto pairs = smallest_eigenpairs(op, 1);
  const Real lambda = pairs[0].lambda;
  const ScalarField h = w_distance(pair.w, lambda, 0.1);

  const Real h_max = h.values.maxCoeff();
  Real prev_sup = std::numeric_limits<Real>::infinity();
  for (int i = 0; i <= 8; ++i) {
    const Real t = h_max * Real(i) / 8;
    Real sup = 0;
    for (Index j = 0; j < g.num_points(); ++j) {
      if (h.values[j] >= t) sup = std::max(sup, std::abs(pairs[0].psi.values[j]));
    }
    CHECK(sup <= prev_sup + 1e-15);
    prev_sup = sup;
  }

  const Real weighted = integrate(
      ScalarField(g, h.values.exp() * pairs[0].psi.values.square()));
  const Real mass = integrate(ScalarField(g, pairs[0].psi.values.square()));
  MESSAGE("exp(h)-weighted mass ratio: " << weighted / mass);
  CHECK(std::isfinite(weighted / mass));
  CHECK(weighted / mass >= 1.0);
}
