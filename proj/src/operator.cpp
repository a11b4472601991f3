#include "llab/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace llab {

DiscreteOperator::DiscreteOperator(Grid grid, ScalarField v_field)
    : grid_(std::move(grid)), v_(std::move(v_field)) {
  if (v_.grid != grid_) {
    throw std::invalid_argument("DiscreteOperator: V sampled on a different grid");
  }
  min_v_ = v_.values.minCoeff();
  max_v_ = v_.values.maxCoeff();
  if (!std::isfinite(min_v_) || min_v_ < 0) {
    throw std::domain_error("DiscreteOperator: V must be finite and >= 0");
  }
  if (max_v_ <= 0) {
    throw std::domain_error("DiscreteOperator: V must be positive somewhere");
  }
}

void DiscreteOperator::apply_values(const ArrayXr& f, ArrayXr& out) const {
  const Index n = grid_.num_points();
  if (f.size() != n) {
    throw std::invalid_argument("apply_h: field on a different grid");
  }
  out.resize(n);
  const Real r = Real(grid_.points_per_unit());
  const Real inv_h2 = r * r;
  const ArrayXr& v = v_.values;
  if (grid_.dim() == 1) {
    for (Index j = 0; j < n; ++j) {
      const Index jm = j == 0 ? n - 1 : j - 1;
      const Index jp = j == n - 1 ? 0 : j + 1;
      out[j] = (Real(2) * f[j] - f[jm] - f[jp]) * inv_h2 + v[j] * f[j];
    }
    return;
  }
  const Index e0 = grid_.extent(0);
  const Index e1 = grid_.extent(1);
  for (Index i0 = 0; i0 < e0; ++i0) {
    const Index row = i0 * e1;
    const Index row_m = (i0 == 0 ? e0 - 1 : i0 - 1) * e1;
    const Index row_p = (i0 == e0 - 1 ? 0 : i0 + 1) * e1;
    for (Index i1 = 0; i1 < e1; ++i1) {
      const Index jm = i1 == 0 ? e1 - 1 : i1 - 1;
      const Index jp = i1 == e1 - 1 ? 0 : i1 + 1;
      const Index j = row + i1;
      out[j] = (Real(4) * f[j] - f[row_m + i1] - f[row_p + i1] - f[row + jm] -
                f[row + jp]) *
                   inv_h2 +
               v[j] * f[j];
    }
  }
}

ArrayXr DiscreteOperator::diagonal() const {
  const Real r = Real(grid_.points_per_unit());
  return Real(2 * grid_.dim()) * r * r + v_.values;
}

ScalarField apply_h(const DiscreteOperator& op, const ScalarField& f) {
  if (f.grid != op.grid()) {
    throw std::invalid_argument("apply_h: field on a different grid");
  }
  ArrayXr out;
  op.apply_values(f.values, out);
  return ScalarField(op.grid(), std::move(out));
}

}  // namespace llab
