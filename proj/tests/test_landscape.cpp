#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "llab/geometry.hpp"
#include "llab/landscape.hpp"
#include "llab/potential.hpp"

using namespace llab;

namespace {

DiscreteOperator uniform_operator(const Grid& g, Real lo, Real hi,
                                  std::uint64_t seed) {
  const Potential p = gen_uniform(g.units(), lo, hi, seed);
  return DiscreteOperator(g, sample_on_grid(p, g));
}

std::set<Index> strict_local_extrema(const ScalarField& f, bool maxima) {
  std::set<Index> out;
  for (Index j = 0; j < f.grid.num_points(); ++j) {
    bool extreme = true;
    for (Index nb : f.grid.neighbors(j, Stencil::AxisAligned)) {
      const bool ok = maxima ? f.values[j] > f.values[nb] : f.values[j] < f.values[nb];
      if (!ok) {
        extreme = false;
        break;
      }
    }
    if (extreme) out.insert(j);
  }
  return out;
}

}  // namespace

TEST_CASE("constant potential: u = 1/c, W = c") {
  const Grid g = make_grid(1, {16}, 5);
  const DiscreteOperator op(g, ScalarField::constant(g, 4.0));
  const LandscapePair pair = compute_landscape(op, 1e-12);
  CHECK((pair.u.values - 0.25).abs().maxCoeff() < 1e-11);
  CHECK((pair.w.values - 4.0).abs().maxCoeff() < 1e-9);
}

TEST_CASE("u is positive, u*w = 1, and u's maxima are W's minima") {
  const Grid g = make_grid(1, {256}, 10);
  const DiscreteOperator op = uniform_operator(g, 0.0, 4.0, 31);
  const LandscapePair pair = compute_landscape(op);
  CHECK(pair.u.values.minCoeff() > 0.0);
  CHECK(((pair.u.values * pair.w.values) - 1.0).abs().maxCoeff() < 1e-14);

  const auto u_max = strict_local_extrema(pair.u, true);
  const auto w_min = strict_local_extrema(pair.w, false);
  CHECK(u_max.size() >= 2);
  CHECK(u_max == w_min);
}

TEST_CASE("sandwich: min V <= min W and min W <= max V") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Grid g = make_grid(1, {64}, 8);
    const DiscreteOperator op = uniform_operator(g, 0.0, 8.0, seed);
    const LandscapePair pair = compute_landscape(op);
    const auto [inf_v, inf_w] = lower_bounds(op.v(), pair.w);
    CHECK(inf_w >= inf_v - 1e-8);
    CHECK(inf_w <= op.max_v() + 1e-8);
    CHECK(pair.w.values.maxCoeff() <= op.max_v() + 1e-8);
  }
  const Grid g2 = make_grid(2, {12, 12}, 4);
  const DiscreteOperator op2 = uniform_operator(g2, 0.0, 16.0, 3);
  const LandscapePair pair2 = compute_landscape(op2);
  const auto [inf_v2, inf_w2] = lower_bounds(op2.v(), pair2.w);
  CHECK(inf_w2 >= inf_v2 - 1e-8);
  CHECK(inf_w2 <= op2.max_v() + 1e-8);
}

TEST_CASE("scaling law: domain x2, values /4 reproduces u exactly") {
  const int n = 32;
  const Potential p1 = gen_uniform({n}, 0.0, 4.0, 17);
  Potential p2;
  p2.dim = 1;
  p2.units = {2 * n};
  p2.cell_values.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    p2.cell_values[2 * i] = p1.cell_values[i] / 4.0;
    p2.cell_values[2 * i + 1] = p1.cell_values[i] / 4.0;
  }
  p2.meta = {"manual", {}, 0};

  const Grid g1 = make_grid(1, {n}, 10);
  const Grid g2 = make_grid(1, {2 * n}, 5);
  REQUIRE(g1.num_points() == g2.num_points());

  const DiscreteOperator op1(g1, sample_on_grid(p1, g1));
  const DiscreteOperator op2(g2, sample_on_grid(p2, g2));
  const LandscapePair l1 = compute_landscape(op1, 1e-12);
  const LandscapePair l2 = compute_landscape(op2, 1e-12);

  CHECK(((l2.u.values - 4.0 * l1.u.values).abs() / l2.u.values.abs()).maxCoeff() <
        1e-12);
  CHECK(argmin_field(l2.w).first == argmin_field(l1.w).first);
}

TEST_CASE("landscape bound holds for oracle eigenpairs") {
  const Grid g = make_grid(1, {256}, 10);
  const DiscreteOperator op = uniform_operator(g, 0.0, 4.0, 31);
  const LandscapePair pair = compute_landscape(op);
  const auto pairs = smallest_eigenpairs(op, 4);
  for (const EigenPair& ep : pairs) {
    const Real psi_inf = ep.psi.values.abs().maxCoeff();
    CHECK(check_landscape_bound(pair.u, ep) <= 1e-6 * psi_inf);
  }
}

TEST_CASE("landscape bound holds on the 2D Bernoulli ensemble instance") {
  const Potential p = gen_bernoulli({80, 80}, 0.0, 4.0, 0.3, 7);
  const Grid g = make_grid(2, p.units, 5);
  const DiscreteOperator op(g, sample_on_grid(p, g));
  const LandscapePair pair = compute_landscape(op);
  const auto pairs = smallest_eigenpairs(op, 1);
  const Real psi_inf = pairs[0].psi.values.abs().maxCoeff();
  CHECK(check_landscape_bound(pair.u, pairs[0]) <= 1e-6 * psi_inf);
}

TEST_CASE("landscape bound is tight for constant potentials") {
  const Grid g = make_grid(1, {8}, 4);
  const Real c = 2.0;
  const DiscreteOperator op(g, ScalarField::constant(g, c));
  const LandscapePair pair = compute_landscape(op, 1e-13);
  const EigenPair ep{c, ScalarField::constant(g, 1.0), 0.0};
  CHECK(std::abs(check_landscape_bound(pair.u, ep)) < 1e-9);
}

TEST_CASE("lower bounds: Fig-10-style gap and eigenvalue dominance") {
  Real sum_inf_v = 0, sum_inf_w = 0;
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    const Grid g = make_grid(1, {64}, 10);
    const DiscreteOperator op = uniform_operator(g, 0.0, 8.0, 200 + seed);
    const LandscapePair pair = compute_landscape(op);
    const auto [inf_v, inf_w] = lower_bounds(op.v(), pair.w);
    sum_inf_v += inf_v;
    sum_inf_w += inf_w;
  }
  CHECK(sum_inf_w > 5.0 * sum_inf_v);

  // lambda_1 >= inf V and >= inf W (up to discretization slack) on a sample.
  const Grid g = make_grid(1, {64}, 10);
  const DiscreteOperator op = uniform_operator(g, 0.0, 8.0, 202);
  const LandscapePair pair = compute_landscape(op);
  const auto [inf_v, inf_w] = lower_bounds(op.v(), pair.w);
  const auto pairs = smallest_eigenpairs(op, 1);
  CHECK(pairs[0].lambda >= inf_v);
  CHECK(pairs[0].lambda >= inf_w * 0.98);
}

TEST_CASE("constant potential: V = c gives inf_v = inf_w = lambda_1 = c") {
  const Grid g = make_grid(1, {12}, 4);
  const Real c = 3.0;
  const DiscreteOperator op(g, ScalarField::constant(g, c));
  const LandscapePair pair = compute_landscape(op, 1e-13);
  const auto [inf_v, inf_w] = lower_bounds(op.v(), pair.w);
  CHECK(inf_v == doctest::Approx(c));
  CHECK(inf_w == doctest::Approx(c).epsilon(1e-10));
  const auto pairs = smallest_eigenpairs(op, 1);
  CHECK(pairs[0].lambda == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("conjugation identity: constants are exact") {
  const Grid g = make_grid(1, {64}, 10);
  const DiscreteOperator op = uniform_operator(g, 0.0, 4.0, 7);
  const LandscapePair pair = compute_landscape(op, 1e-13);
  CHECK(conjugated_residual(op, pair, ScalarField::constant(g, 3.0)) < 1e-12);
}

TEST_CASE("conjugation identity: smooth trig phi converges at second order") {
  const int n = 32;
  const Potential p = gen_uniform({n}, 0.0, 4.0, 23);
  std::vector<Real> residuals;
  for (int r : {5, 10, 20}) {
    const Grid g = make_grid(1, {n}, r);
    const DiscreteOperator op(g, sample_on_grid(p, g));
    const LandscapePair pair = compute_landscape(op, 1e-13);
    ArrayXr phi(g.num_points());
    for (Index j = 0; j < g.num_points(); ++j) {
      const Real x = g.coordinates(j)[0];
      phi[j] = 2.0 + std::cos(2 * std::numbers::pi * x / g.axis_length(0));
    }
    residuals.push_back(conjugated_residual(op, pair, ScalarField(g, phi)));
  }
  const Real order = 0.5 * std::log2(residuals[0] / residuals[2]);
  MESSAGE("residuals: " << residuals[0] << " " << residuals[1] << " "
                        << residuals[2] << " order " << order);
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("conjugated operator reproduces eigenpairs (phi = psi/u)") {
  const Grid g = make_grid(1, {64}, 10);
  const DiscreteOperator op = uniform_operator(g, 0.0, 4.0, 12);
  const LandscapePair pair = compute_landscape(op, 1e-12);
  const auto pairs = smallest_eigenpairs(op, 2);
  for (const EigenPair& ep : pairs) {
    const ScalarField phi(g, ep.psi.values / pair.u.values);
    const ScalarField conj = apply_conjugated(pair, phi);
    const Real defect =
        std::sqrt((conj.values - ep.lambda * phi.values).square().sum()) /
        std::sqrt(phi.values.square().sum());
    MESSAGE("conjugated defect " << defect << " at lambda " << ep.lambda);
    CHECK(defect <= 0.02 * ep.lambda);
  }
}

TEST_CASE("amplifying the potential relocates the deepest well") {
  // Same realization, values x64: the effective potential reorganizes and
  // localization moves, with more (sharper) wells.
  const Potential p1 = gen_uniform({256}, 0.0, 4.0, 31);
  Potential p2 = p1;
  p2.cell_values *= 64.0;
  const Grid g = make_grid(1, {256}, 10);
  const LandscapePair l1 = compute_landscape(DiscreteOperator(g, sample_on_grid(p1, g)));
  const LandscapePair l2 = compute_landscape(DiscreteOperator(g, sample_on_grid(p2, g)));
  const auto wells1 = local_minima(l1.w);
  const auto wells2 = local_minima(l2.w);
  CHECK(wells1[0].min_index != wells2[0].min_index);
  CHECK(wells2.size() > wells1.size());
}

TEST_CASE("compute_landscape propagates solver failure") {
  const Grid g = make_grid(1, {32}, 4);
  const DiscreteOperator op = uniform_operator(g, 0.0, 4.0, 2);
  CHECK_THROWS(compute_landscape(op, 1e-10, 2));
}
