#include "llab/landscape.hpp"

#include <cmath>
#include <stdexcept>

namespace llab {

LandscapePair compute_landscape(const DiscreteOperator& op, Real tol,
                                Index max_iter) {
  const Grid& grid = op.grid();
  const ArrayXr rhs = ArrayXr::Ones(grid.num_points());
  auto apply = [&op](const ArrayXr& in, ArrayXr& out) { op.apply_values(in, out); };
  auto [u_values, report] = solve_spd(apply, op.diagonal(), rhs, tol, max_iter);
  if (!report.converged) {
    throw std::runtime_error("compute_landscape: solver did not converge");
  }
  if ((u_values <= 0).any()) {
    throw std::runtime_error(
        "compute_landscape: landscape function is not strictly positive");
  }
  ScalarField u(grid, std::move(u_values));
  ScalarField w(grid, u.values.inverse());
  return {std::move(u), std::move(w), report};
}

std::pair<Real, Real> lower_bounds(const ScalarField& v_field,
                                   const ScalarField& w_field) {
  if (v_field.grid != w_field.grid) {
    throw std::invalid_argument("lower_bounds: fields on different grids");
  }
  return {argmin_field(v_field).second, argmin_field(w_field).second};
}

Real check_landscape_bound(const ScalarField& u, const EigenPair& pair) {
  if (u.grid != pair.psi.grid) {
    throw std::invalid_argument("check_landscape_bound: grid mismatch");
  }
  const Real psi_inf = pair.psi.values.abs().maxCoeff();
  return (pair.psi.values.abs() - pair.lambda * psi_inf * u.values).maxCoeff();
}

ScalarField apply_conjugated(const LandscapePair& pair, const ScalarField& phi) {
  const Grid& grid = pair.u.grid;
  if (phi.grid != grid) {
    throw std::invalid_argument("apply_conjugated: grid mismatch");
  }
  const ArrayXr& u = pair.u.values;
  const ArrayXr& w = pair.w.values;
  const ArrayXr& f = phi.values;
  const Index n = grid.num_points();
  const Real r = Real(grid.points_per_unit());
  const Real inv_h2 = r * r;
  const ArrayXr u2 = u.square();
  ArrayXr out(n);

  auto half_u2 = [&u2](Index a, Index b) { return (u2[a] + u2[b]) / Real(2); };

  if (grid.dim() == 1) {
    for (Index j = 0; j < n; ++j) {
      const Index jm = j == 0 ? n - 1 : j - 1;
      const Index jp = j == n - 1 ? 0 : j + 1;
      const Real flux = half_u2(j, jp) * (f[jp] - f[j]) - half_u2(jm, j) * (f[j] - f[jm]);
      out[j] = -flux * inv_h2 / u2[j] + w[j] * f[j];
    }
    return ScalarField(grid, std::move(out));
  }

  const Index e0 = grid.extent(0);
  const Index e1 = grid.extent(1);
  for (Index i0 = 0; i0 < e0; ++i0) {
    const Index row = i0 * e1;
    const Index row_m = (i0 == 0 ? e0 - 1 : i0 - 1) * e1;
    const Index row_p = (i0 == e0 - 1 ? 0 : i0 + 1) * e1;
    for (Index i1 = 0; i1 < e1; ++i1) {
      const Index j = row + i1;
      const Index jm = row + (i1 == 0 ? e1 - 1 : i1 - 1);
      const Index jp = row + (i1 == e1 - 1 ? 0 : i1 + 1);
      const Index im = row_m + i1;
      const Index ip = row_p + i1;
      Real flux = half_u2(j, ip) * (f[ip] - f[j]) - half_u2(im, j) * (f[j] - f[im]);
      flux += half_u2(j, jp) * (f[jp] - f[j]) - half_u2(jm, j) * (f[j] - f[jm]);
      out[j] = -flux * inv_h2 / u2[j] + w[j] * f[j];
    }
  }
  return ScalarField(grid, std::move(out));
}

Real conjugated_residual(const DiscreteOperator& op, const LandscapePair& pair,
                         const ScalarField& phi) {
  const Grid& grid = pair.u.grid;
  if (phi.grid != grid || op.grid() != grid) {
    throw std::invalid_argument("conjugated_residual: grid mismatch");
  }
  const ScalarField u_phi(grid, pair.u.values * phi.values);
  const ScalarField h_u_phi = apply_h(op, u_phi);
  const ScalarField conj = apply_conjugated(pair, phi);
  const ArrayXr defect = h_u_phi.values - pair.u.values * conj.values;
  const Real phi_norm = std::sqrt(phi.values.square().sum());
  if (phi_norm == 0) {
    throw std::invalid_argument("conjugated_residual: phi must be nonzero");
  }
  return std::sqrt(defect.square().sum()) / phi_norm;
}

}  // namespace llab
