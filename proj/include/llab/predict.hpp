#pragma once

#include <vector>

#include "llab/geometry.hpp"
#include "llab/grid.hpp"
#include "llab/spectra.hpp"
#include "llab/types.hpp"

namespace llab {

/// Spectral prediction attached to a well: lambda_hat = (1 + dim/4) * w_min
/// and the connected sublevel component at energy alpha * w_min.
struct Prediction {
  Well well;
  Real lambda_hat = 0;
  Region support;
};

/// Uniform-bin histogram over [lo, hi); values equal to hi are excluded.
struct Histogram {
  Real lo = 0;
  Real hi = 1;
  std::vector<std::int64_t> counts;
};

struct MatchPair {
  int eigen_rank = 0;
  int well_rank = 0;
  Real distance = 0;  // periodic Euclidean, eigenfunction peak to well minimum
};

/// Outcome of pairing eigenfunction peaks with wells: greedy nearest-well
/// pairs in eigenvalue order, plus the naive rank-to-rank distances that
/// expose order mismatches between the two lists.
struct MatchReport {
  std::vector<MatchPair> pairs;
  std::vector<int> unmatched_wells;
  std::vector<int> unmatched_eigenpairs;
  std::vector<Real> rank_to_rank_distance;
};

struct RatioStat {
  Index count = 0;
  Real mean = 0;
  Real sd = 0;  // population standard deviation
};

/// lambda_hat_k = (1 + dim/4) * w_min(k) in rank order.
std::vector<Real> predict_eigenvalues(const std::vector<Well>& wells, int dim);

/// Default sublevel factor: 1.875 in 1D (1.5 x 1.25) and 1.56 in 2D.
Real default_support_alpha(int dim);

/// Connected sublevel component through each well at energy alpha * w_min.
std::vector<Region> support_regions(const std::vector<Well>& wells,
                                    const ScalarField& w, Real alpha);

/// Full per-well predictions (eigenvalue estimate + support region).
std::vector<Prediction> predict_all(const std::vector<Well>& wells,
                                    const ScalarField& w, Real alpha);

MatchReport match_locations(const std::vector<Well>& wells,
                            const std::vector<EigenPair>& eigenpairs);

/// Mean and population SD of lambda_k / w_min(k) over the first m rank pairs,
/// for each m in counts.
std::vector<RatioStat> ratio_stats(const std::vector<Real>& eigenvalues,
                                   const std::vector<Well>& wells,
                                   const std::vector<Index>& counts);

Histogram dos_histogram(const std::vector<Real>& values, Real lo, Real hi,
                        Index bins);

/// Number of eigenvalues <= e (binary search; input must be sorted).
Index counting_function(const std::vector<Real>& sorted_eigenvalues, Real e);

/// Phase-space (Weyl) counting estimate
///   N(E) = (2 pi)^{-n} omega_n integral (E - field)_+^{n/2},
/// with omega_1 = 2, omega_2 = pi. Classical for field = V, effective for
/// field = W.
Real weyl_counting(const ScalarField& field, Real e);

/// Quadrature oracle for the (1 + n/4) constant: the ratio
/// integral(g) / integral(g^2) with g the positive part of the concave
/// quadratic 1 - sum (x_i / a_i)^2, evaluated by the midpoint rule with
/// `resolution` points per axis over the bounding box.
Real bump_constant(int dim, const std::vector<Real>& semiaxes, Index resolution);

}  // namespace llab
