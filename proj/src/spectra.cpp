#include "llab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "llab/rng.hpp"
#include "llab/solver.hpp"

namespace llab {

namespace {

struct ShiftBreakdown {};

// Lanczos on (H - sigma I)^{-1} with full reorthogonalization, deflation of
// locked pairs, and restarts. A pair is locked only after its H-residual has
// been recomputed and meets the tolerance; the bottom of the spectrum is
// additionally confirmed by verification sweeps that look for anything the
// earlier sweeps might have skipped (degenerate copies in particular).
class ShiftInvertLanczos {
 public:
  ShiftInvertLanczos(const DiscreteOperator& op, const EigsOptions& opts)
      : op_(op),
        opts_(opts),
        n_(op.grid().num_points()),
        rng_(opts.start_seed),
        locked_vecs_(op.grid().num_points(), 0) {
    // Constant V makes H - (min V) I exactly singular on constants.
    on_fallback_ = op_.max_v() == op_.min_v();
    set_sigma();
  }

  void ensure(Index k) {
    if (k < 1) throw std::invalid_argument("smallest_eigenpairs: k must be >= 1");
    if (2 * k > n_) {
      throw std::invalid_argument("smallest_eigenpairs: k too large relative to the grid");
    }
    Index sweeps = 0;
    Index m_max = sweep_length(k);
    Index ver_m = std::min(n_, Index(96));
    while (true) {
      const Index have = Index(locked_vals_.size());
      if (have >= k && bottom_verified_count_ >= k) return;
      if (sweeps++ >= opts_.max_restarts) {
        throw std::runtime_error("smallest_eigenpairs: restart budget exhausted");
      }
      const bool verifying = have >= k;
      const Index need = verifying ? 1 : k - have;
      SweepOutcome out;
      try {
        out = run_sweep(need, verifying ? ver_m : m_max);
      } catch (const ShiftBreakdown&) {
        if (on_fallback_) {
          throw std::runtime_error("smallest_eigenpairs: shifted solve failed to converge");
        }
        on_fallback_ = true;
        set_sigma();
        continue;
      }
      if (out.start_exhausted) {
        // Deflated space is (numerically) empty: everything there is to find
        // has been found.
        bottom_verified_count_ = Index(locked_vals_.size());
        if (Index(locked_vals_.size()) >= k) return;
        throw std::runtime_error("smallest_eigenpairs: spectrum exhausted early");
      }
      if (verifying) {
        if (out.newly_locked == 0) {
          ver_m = grow(ver_m);
          continue;
        }
        const Real kth = kth_value(k);
        const Real slack = Real(1e-8) * std::max(Real(1), std::abs(kth));
        if (out.smallest_new >= kth - slack) {
          bottom_verified_count_ = k;
        }
        continue;
      }
      if (out.newly_locked == 0) m_max = grow(m_max);
    }
  }

  std::vector<EigenPair> take(Index k) const {
    std::vector<Index> order(locked_vals_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = Index(i);
    std::sort(order.begin(), order.end(), [this](Index a, Index b) {
      return locked_vals_[a] < locked_vals_[b];
    });
    const Grid& grid = op_.grid();
    const Real h = grid.spacing();
    const Real cell = grid.dim() == 1 ? h : h * h;
    std::vector<EigenPair> out;
    out.reserve(k);
    for (Index i = 0; i < k; ++i) {
      const Index src = order[i];
      VectorXr y = locked_vecs_.col(src);
      // Integrate-norm normalization and deterministic sign.
      y /= std::sqrt(cell) * y.norm();
      Index peak = 0;
      Real peak_abs = -1;
      for (Index j = 0; j < n_; ++j) {
        const Real a = std::abs(y[j]);
        if (a > peak_abs) {
          peak_abs = a;
          peak = j;
        }
      }
      if (y[peak] < 0) y = -y;
      EigenPair pair{locked_vals_[src], ScalarField(grid, y.array()), 0};
      pair.residual = eigen_residual(op_, pair);
      if (pair.lambda < op_.min_v() - Real(1e-9)) {
        throw std::runtime_error("smallest_eigenpairs: eigenvalue below inf V");
      }
      out.push_back(std::move(pair));
    }
    return out;
  }

  Index locked_count() const { return Index(locked_vals_.size()); }
  Real locked_value(Index i) const { return sorted_value(i); }

 private:
  struct SweepOutcome {
    Index newly_locked = 0;
    Real smallest_new = std::numeric_limits<Real>::infinity();
    bool start_exhausted = false;
  };

  void set_sigma() {
    sigma_ = on_fallback_ ? op_.min_v() - Real(0.1) : op_.min_v();
    diag_ = op_.diagonal() - sigma_;
    const Real r = Real(op_.grid().points_per_unit());
    op_norm_bound_ = Real(4 * op_.grid().dim()) * r * r + op_.max_v() - sigma_;
  }

  Index sweep_length(Index k) const {
    const Index want = Index(Real(2.5) * Real(k)) + 48;
    return std::min(n_, std::max(Index(64), want));
  }

  Index grow(Index m) const { return std::min(n_, m + m / 2); }

  Real sorted_value(Index i) const {
    std::vector<Real> vals = locked_vals_;
    std::sort(vals.begin(), vals.end());
    return vals[i];
  }

  Real kth_value(Index k) const { return sorted_value(k - 1); }

  VectorXr apply_inverse(const VectorXr& x) const {
    auto apply = [this](const ArrayXr& in, ArrayXr& out) {
      op_.apply_values(in, out);
      out -= sigma_ * in;
    };
    auto [y, report] =
        solve_spd(apply, diag_, x.array(), opts_.inner_tol, opts_.inner_max_iter);
    if (!report.converged) throw ShiftBreakdown{};
    return VectorXr(y.matrix());
  }

  void deflate(VectorXr& w) const {
    if (locked_vecs_.cols() == 0) return;
    w.noalias() -= locked_vecs_ * (locked_vecs_.transpose() * w);
  }

  // Verify candidates in ascending-lambda order against the true H-residual
  // and lock the converged prefix. Returns the number locked.
  Index verify_and_lock(const MatrixXr& q_basis, const MatrixXr& ritz_vectors,
                        const std::vector<Index>& cols, SweepOutcome& out) {
    Index locked_here = 0;
    ArrayXr hy(n_);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      VectorXr y = q_basis * ritz_vectors.col(cols[i]);
      deflate(y);
      const Real nrm = y.norm();
      if (nrm < Real(1e-8)) break;
      y /= nrm;
      op_.apply_values(y.array(), hy);
      // The Rayleigh quotient minimizes the residual for this vector; the
      // tridiagonal value lambdas[i] only seeded the candidate order.
      const Real lambda = y.dot(hy.matrix());
      const Real res = (hy.matrix() - lambda * y).norm();
      if (res > opts_.tol) break;
      locked_vecs_.conservativeResize(Eigen::NoChange, locked_vecs_.cols() + 1);
      locked_vecs_.col(locked_vecs_.cols() - 1) = y;
      locked_vals_.push_back(lambda);
      out.smallest_new = std::min(out.smallest_new, lambda);
      ++locked_here;
    }
    out.newly_locked += locked_here;
    return locked_here;
  }

  SweepOutcome run_sweep(Index need, Index m_max) {
    SweepOutcome out;
    VectorXr v(n_);
    bool have_start = false;
    for (int attempt = 0; attempt < 5 && !have_start; ++attempt) {
      for (Index i = 0; i < n_; ++i) v[i] = rng_.normal();
      deflate(v);
      deflate(v);
      const Real nrm = v.norm();
      if (nrm > Real(1e-6) * std::sqrt(Real(n_))) {
        v /= nrm;
        have_start = true;
      }
    }
    if (!have_start) {
      out.start_exhausted = true;
      return out;
    }

    MatrixXr q_basis(n_, m_max);
    VectorXr alpha = VectorXr::Zero(m_max);
    VectorXr beta = VectorXr::Zero(m_max);
    q_basis.col(0) = v;

    constexpr Index kCheckEvery = 16;
    Eigen::SelfAdjointEigenSolver<MatrixXr> tri;

    for (Index j = 0; j < m_max; ++j) {
      VectorXr w = apply_inverse(q_basis.col(j));
      const Real w_scale = w.norm();
      if (j > 0) w.noalias() -= beta[j - 1] * q_basis.col(j - 1);
      alpha[j] = q_basis.col(j).dot(w);
      w.noalias() -= alpha[j] * q_basis.col(j);
      for (int pass = 0; pass < 2; ++pass) {
        deflate(w);
        w.noalias() -=
            q_basis.leftCols(j + 1) * (q_basis.leftCols(j + 1).transpose() * w);
      }
      beta[j] = w.norm();
      const bool breakdown = beta[j] <= Real(1e-13) * std::max(w_scale, Real(1));
      const Index m = j + 1;
      const bool at_end = m == m_max || breakdown;

      if (m % kCheckEvery == 0 || at_end) {
        tri.computeFromTridiagonal(alpha.head(m), beta.head(std::max(Index(0), m - 1)),
                                   Eigen::ComputeEigenvectors);
        std::vector<Index> cols;
        bool all_gated = true;
        for (Index i = 0; Index(cols.size()) < need && i < m; ++i) {
          const Index col = m - 1 - i;  // theta descending = lambda ascending
          const Real theta = tri.eigenvalues()[col];
          if (theta <= 0) break;
          cols.push_back(col);
          const Real est = breakdown
                               ? Real(0)
                               : op_norm_bound_ * beta[j] *
                                     std::abs(tri.eigenvectors()(m - 1, col)) / theta;
          all_gated = all_gated && est <= opts_.tol;
        }
        if (Index(cols.size()) == need && (all_gated || at_end)) {
          const Index got =
              verify_and_lock(q_basis.leftCols(m), tri.eigenvectors(), cols, out);
          if (got == need) return out;
          if (!at_end && got > 0) return out;  // restart with a smaller problem
        } else if (at_end && !cols.empty()) {
          verify_and_lock(q_basis.leftCols(m), tri.eigenvectors(), cols, out);
        }
      }
      if (at_end) break;
      q_basis.col(j + 1) = w / beta[j];
    }
    return out;
  }

  const DiscreteOperator& op_;
  EigsOptions opts_;
  Index n_;
  Rng rng_;
  bool on_fallback_ = false;
  Real sigma_ = 0;
  ArrayXr diag_;
  Real op_norm_bound_ = 0;
  MatrixXr locked_vecs_;
  std::vector<Real> locked_vals_;
  Index bottom_verified_count_ = 0;
};

}  // namespace

std::vector<EigenPair> smallest_eigenpairs(const DiscreteOperator& op, Index k,
                                           const EigsOptions& opts) {
  ShiftInvertLanczos driver(op, opts);
  driver.ensure(k);
  return driver.take(k);
}

std::vector<EigenPair> eigenpairs_below(const DiscreteOperator& op, Real e_max,
                                        Index k_cap, const EigsOptions& opts) {
  const Index n = op.grid().num_points();
  const Index hard_cap = std::min(k_cap, n / 2);
  if (hard_cap < 1) throw std::invalid_argument("eigenpairs_below: cap too small");
  ShiftInvertLanczos driver(op, opts);
  Index k = std::min(hard_cap, Index(32));
  driver.ensure(k);
  while (driver.locked_value(k - 1) <= e_max && k < hard_cap) {
    k = std::min(hard_cap, 2 * k);
    driver.ensure(k);
  }
  auto pairs = driver.take(k);
  while (!pairs.empty() && pairs.back().lambda > e_max) pairs.pop_back();
  return pairs;
}

Real eigen_residual(const DiscreteOperator& op, const EigenPair& pair) {
  if (pair.psi.grid != op.grid()) {
    throw std::invalid_argument("eigen_residual: grid mismatch");
  }
  ArrayXr hpsi;
  op.apply_values(pair.psi.values, hpsi);
  const ScalarField defect(op.grid(), hpsi - pair.lambda * pair.psi.values);
  return norm_l2(defect);
}

Real square_well_eigenvalue(Real nu) {
  if (!(nu > 0)) {
    throw std::invalid_argument("square_well_eigenvalue: nu must be positive");
  }
  const auto f = [nu](Real lambda) {
    return std::cos(std::sqrt(lambda)) - std::sqrt(lambda / nu);
  };
  constexpr Real kQuarterPiSq = Real(2.4674011002723395);  // pi^2 / 4
  Real lo = 0;
  Real hi = kQuarterPiSq;
  // f(0) = 1 > 0 and f(pi^2/4) < 0, so the root is bracketed.
  while (hi - lo > Real(1e-12)) {
    const Real mid = (lo + hi) / 2;
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace llab
