#include "llab/predict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace llab {

std::vector<Real> predict_eigenvalues(const std::vector<Well>& wells, int dim) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("predict_eigenvalues: dim must be 1 or 2");
  }
  const Real factor = Real(1) + Real(dim) / Real(4);
  std::vector<Real> out;
  out.reserve(wells.size());
  for (const Well& w : wells) out.push_back(factor * w.w_min);
  return out;
}

Real default_support_alpha(int dim) {
  if (dim == 1) return Real(1.875);
  if (dim == 2) return Real(1.56);
  throw std::invalid_argument("default_support_alpha: dim must be 1 or 2");
}

std::vector<Region> support_regions(const std::vector<Well>& wells,
                                    const ScalarField& w, Real alpha) {
  if (!(alpha > 1)) {
    throw std::invalid_argument("support_regions: alpha must exceed 1");
  }
  std::vector<Region> out;
  out.reserve(wells.size());
  for (const Well& well : wells) {
    Region region = sublevel_component(w, well.min_index, alpha * well.w_min);
    region.seed_well_rank = well.rank;
    out.push_back(std::move(region));
  }
  return out;
}

std::vector<Prediction> predict_all(const std::vector<Well>& wells,
                                    const ScalarField& w, Real alpha) {
  const std::vector<Real> lambda_hat = predict_eigenvalues(wells, w.grid.dim());
  std::vector<Region> regions = support_regions(wells, w, alpha);
  std::vector<Prediction> out;
  out.reserve(wells.size());
  for (std::size_t i = 0; i < wells.size(); ++i) {
    out.push_back({wells[i], lambda_hat[i], std::move(regions[i])});
  }
  return out;
}

namespace {

// Peak of |psi|, ties to the smallest flat index.
Index psi_peak_index(const EigenPair& pair) {
  Index best = 0;
  Real best_abs = -1;
  for (Index j = 0; j < pair.psi.values.size(); ++j) {
    const Real a = std::abs(pair.psi.values[j]);
    if (a > best_abs) {
      best_abs = a;
      best = j;
    }
  }
  return best;
}

}  // namespace

MatchReport match_locations(const std::vector<Well>& wells,
                            const std::vector<EigenPair>& eigenpairs) {
  if (wells.empty() || eigenpairs.empty()) {
    throw std::invalid_argument("match_locations: both lists must be non-empty");
  }
  const Grid& grid = eigenpairs.front().psi.grid;
  MatchReport report;
  std::vector<char> used(wells.size(), 0);
  for (std::size_t e = 0; e < eigenpairs.size(); ++e) {
    const auto peak = grid.coordinates(psi_peak_index(eigenpairs[e]));
    int best = -1;
    Real best_dist = std::numeric_limits<Real>::infinity();
    for (std::size_t wi = 0; wi < wells.size(); ++wi) {
      if (used[wi]) continue;
      const Real d = grid.periodic_distance(peak, wells[wi].min_location);
      if (d < best_dist) {
        best_dist = d;
        best = int(wi);
      }
    }
    if (best < 0) {
      report.unmatched_eigenpairs.push_back(int(e) + 1);
      continue;
    }
    used[best] = 1;
    report.pairs.push_back({int(e) + 1, wells[best].rank, best_dist});
  }
  for (std::size_t wi = 0; wi < wells.size(); ++wi) {
    if (!used[wi]) report.unmatched_wells.push_back(wells[wi].rank);
  }
  const std::size_t common = std::min(wells.size(), eigenpairs.size());
  for (std::size_t i = 0; i < common; ++i) {
    report.rank_to_rank_distance.push_back(grid.periodic_distance(
        grid.coordinates(psi_peak_index(eigenpairs[i])), wells[i].min_location));
  }
  return report;
}

std::vector<RatioStat> ratio_stats(const std::vector<Real>& eigenvalues,
                                   const std::vector<Well>& wells,
                                   const std::vector<Index>& counts) {
  Index max_count = 0;
  for (Index c : counts) max_count = std::max(max_count, c);
  if (max_count < 1) {
    throw std::invalid_argument("ratio_stats: counts must contain a positive entry");
  }
  if (Index(eigenvalues.size()) < max_count || Index(wells.size()) < max_count) {
    throw std::invalid_argument("ratio_stats: not enough eigenvalues or wells");
  }
  std::vector<Real> ratios(max_count);
  for (Index i = 0; i < max_count; ++i) {
    ratios[i] = eigenvalues[i] / wells[i].w_min;
  }
  std::vector<RatioStat> out;
  for (Index c : counts) {
    Real mean = 0;
    for (Index i = 0; i < c; ++i) mean += ratios[i];
    mean /= Real(c);
    Real var = 0;
    for (Index i = 0; i < c; ++i) var += (ratios[i] - mean) * (ratios[i] - mean);
    var /= Real(c);
    out.push_back({c, mean, std::sqrt(var)});
  }
  return out;
}

Histogram dos_histogram(const std::vector<Real>& values, Real lo, Real hi,
                        Index bins) {
  if (!(lo < hi)) throw std::invalid_argument("dos_histogram: need lo < hi");
  if (bins < 1) throw std::invalid_argument("dos_histogram: need bins >= 1");
  Histogram h{lo, hi, std::vector<std::int64_t>(bins, 0)};
  const Real width = (hi - lo) / Real(bins);
  for (Real v : values) {
    if (v < lo || v >= hi) continue;
    // Bin counts are differences of the counting function N(E) = #{x <= E},
    // so interior edges close on the right: bin i holds (edge_i, edge_{i+1}].
    Index b = Index(std::ceil((v - lo) / width)) - 1;
    b = std::clamp(b, Index(0), bins - 1);
    ++h.counts[b];
  }
  return h;
}

Index counting_function(const std::vector<Real>& sorted_eigenvalues, Real e) {
  if (!std::is_sorted(sorted_eigenvalues.begin(), sorted_eigenvalues.end())) {
    throw std::invalid_argument("counting_function: input must be sorted");
  }
  return Index(std::upper_bound(sorted_eigenvalues.begin(), sorted_eigenvalues.end(),
                                e) -
               sorted_eigenvalues.begin());
}

Real weyl_counting(const ScalarField& field, Real e) {
  const int dim = field.grid.dim();
  const Real h = field.grid.spacing();
  if (dim == 1) {
    // (2 pi)^{-1} * omega_1 * integral sqrt((E - V)_+), omega_1 = 2.
    Real sum = 0;
    for (Index j = 0; j < field.values.size(); ++j) {
      sum += std::sqrt(std::max(e - field.values[j], Real(0)));
    }
    return h * sum / std::numbers::pi_v<Real>;
  }
  // (2 pi)^{-2} * omega_2 * integral (E - V)_+, omega_2 = pi.
  Real sum = 0;
  for (Index j = 0; j < field.values.size(); ++j) {
    sum += std::max(e - field.values[j], Real(0));
  }
  return h * h * sum / (Real(4) * std::numbers::pi_v<Real>);
}

Real bump_constant(int dim, const std::vector<Real>& semiaxes, Index resolution) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("bump_constant: dim must be 1 or 2");
  }
  if (Index(semiaxes.size()) != dim) {
    throw std::invalid_argument("bump_constant: one semiaxis per dimension");
  }
  for (Real a : semiaxes) {
    if (!(a > 0)) throw std::invalid_argument("bump_constant: semiaxes must be positive");
  }
  if (resolution < 2) {
    throw std::invalid_argument("bump_constant: resolution too small");
  }
  // The cell volume cancels in the ratio, so plain sums suffice.
  Real num = 0;
  Real den = 0;
  if (dim == 1) {
    const Real a = semiaxes[0];
    const Real step = Real(2) * a / Real(resolution);
    for (Index i = 0; i < resolution; ++i) {
      const Real x = -a + (Real(i) + Real(0.5)) * step;
      const Real g = std::max(Real(1) - (x / a) * (x / a), Real(0));
      num += g;
      den += g * g;
    }
  } else {
    const Real a0 = semiaxes[0];
    const Real a1 = semiaxes[1];
    const Real s0 = Real(2) * a0 / Real(resolution);
    const Real s1 = Real(2) * a1 / Real(resolution);
    for (Index i = 0; i < resolution; ++i) {
      const Real x = -a0 + (Real(i) + Real(0.5)) * s0;
      const Real tx = (x / a0) * (x / a0);
      for (Index j = 0; j < resolution; ++j) {
        const Real y = -a1 + (Real(j) + Real(0.5)) * s1;
        const Real g = std::max(Real(1) - tx - (y / a1) * (y / a1), Real(0));
        num += g;
        den += g * g;
      }
    }
  }
  return num / den;
}

}  // namespace llab
