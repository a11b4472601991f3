#pragma once

#include "llab/grid.hpp"
#include "llab/types.hpp"

namespace llab {

/// Matrix-free discrete Schrodinger operator H = -Laplacian + V on the
/// periodic grid, with the standard 3-point (1D) / 5-point (2D) stencil:
///   (H f)_j = (2 dim f_j - sum_axis_neighbors f_k) / h^2 + V_j f_j.
/// V must be nonnegative and positive somewhere, which makes H symmetric
/// positive definite.
class DiscreteOperator {
 public:
  DiscreteOperator(Grid grid, ScalarField v_field);

  const Grid& grid() const { return grid_; }
  const ScalarField& v() const { return v_; }
  Real min_v() const { return min_v_; }
  Real max_v() const { return max_v_; }

  /// H applied to raw values (hot path; out is resized as needed).
  void apply_values(const ArrayXr& f, ArrayXr& out) const;

  /// Diagonal of H, 2 dim / h^2 + V_j (Jacobi preconditioner).
  ArrayXr diagonal() const;

 private:
  Grid grid_;
  ScalarField v_;
  Real min_v_;
  Real max_v_;
};

/// H f as a field; throws on grid mismatch.
ScalarField apply_h(const DiscreteOperator& op, const ScalarField& f);

}  // namespace llab
