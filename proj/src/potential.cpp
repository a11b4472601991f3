#include "llab/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "llab/dft.hpp"
#include "llab/rng.hpp"

namespace llab {

void validate_potential(const Potential& p) {
  if (p.dim != 1 && p.dim != 2) {
    throw std::invalid_argument("Potential: dim must be 1 or 2");
  }
  if (Index(p.units.size()) != p.dim) {
    throw std::invalid_argument("Potential: units must have one entry per axis");
  }
  Index cells = 1;
  for (int u : p.units) {
    if (u < 1) throw std::invalid_argument("Potential: units must be positive");
    cells *= u;
  }
  if (p.cell_values.size() != cells) {
    throw std::invalid_argument("Potential: cell_values length mismatch");
  }
  bool any_positive = false;
  for (Index i = 0; i < p.cell_values.size(); ++i) {
    const Real v = p.cell_values[i];
    if (!std::isfinite(v) || v < 0) {
      throw std::domain_error("Potential: cell values must be finite and >= 0");
    }
    any_positive = any_positive || v > 0;
  }
  if (!any_positive) {
    throw std::domain_error("Potential: at least one cell value must be positive");
  }
}

namespace {

Index cell_count(const std::vector<int>& units) {
  Index n = 1;
  for (int u : units) n *= u;
  return n;
}

}  // namespace

Potential gen_uniform(const std::vector<int>& units, Real lo, Real hi,
                      std::uint64_t seed) {
  if (lo < 0 || hi < lo) {
    throw std::invalid_argument("gen_uniform: need 0 <= lo <= hi");
  }
  Potential p;
  p.dim = int(units.size());
  p.units = units;
  p.meta = {"uniform", {{"lo", lo}, {"hi", hi}}, seed};
  Rng rng(seed);
  p.cell_values.resize(cell_count(units));
  for (Index i = 0; i < p.cell_values.size(); ++i) {
    p.cell_values[i] = lo + (hi - lo) * rng.uniform();
  }
  validate_potential(p);
  return p;
}

Potential gen_bernoulli(const std::vector<int>& units, Real v0, Real v1, Real p1,
                        std::uint64_t seed) {
  if (v0 < 0 || v1 < 0) {
    throw std::invalid_argument("gen_bernoulli: values must be >= 0");
  }
  if (v0 + v1 <= 0) {
    throw std::invalid_argument("gen_bernoulli: both values zero");
  }
  if (!(p1 >= 0 && p1 <= 1)) {
    throw std::invalid_argument("gen_bernoulli: p1 must lie in [0,1]");
  }
  Potential p;
  p.dim = int(units.size());
  p.units = units;
  p.meta = {"bernoulli", {{"v0", v0}, {"v1", v1}, {"p1", p1}}, seed};
  Rng rng(seed);
  p.cell_values.resize(cell_count(units));
  for (Index i = 0; i < p.cell_values.size(); ++i) {
    p.cell_values[i] = rng.uniform() < p1 ? v1 : v0;
  }
  validate_potential(p);
  return p;
}

namespace {

// Inverse-filtered noise must come out real; a noticeable imaginary part
// signals a broken multiplier symmetry.
ArrayXr real_part_checked(const ArrayXc& y) {
  Real max_abs = 0;
  Real max_imag = 0;
  for (Index i = 0; i < y.size(); ++i) {
    max_abs = std::max(max_abs, std::abs(y[i]));
    max_imag = std::max(max_imag, std::abs(y[i].imag()));
  }
  if (max_imag > Real(1e-10) * std::max(Real(1), max_abs)) {
    throw std::runtime_error("correlated generator: filtered field is not real");
  }
  ArrayXr out(y.size());
  for (Index i = 0; i < y.size(); ++i) out[i] = y[i].real();
  return out;
}

}  // namespace

Potential gen_correlated_1d(int n, Real sigma, Real d, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("gen_correlated_1d: n must be even and >= 4");
  }
  if (sigma <= 0 || d <= 0) {
    throw std::invalid_argument("gen_correlated_1d: sigma and d must be positive");
  }
  Rng rng(seed);
  ArrayXc z(n);
  for (Index i = 0; i < n; ++i) z[i] = Complex(rng.normal(), 0);

  ArrayXr q(n);
  for (Index i = 0; i <= n / 2; ++i) {
    const Real qi = sigma * std::exp(-d * Real(i));
    q[i] = qi;
    q[(n - i) % n] = qi;
  }
  ArrayXc spec = dft(z);
  for (Index i = 0; i < n; ++i) spec[i] *= q[i];
  const ArrayXr field = real_part_checked(idft(spec));

  Potential p;
  p.dim = 1;
  p.units = {n};
  p.meta = {"correlated", {{"sigma", sigma}, {"d", d}}, seed};
  p.cell_values = field.square();
  validate_potential(p);
  return p;
}

Potential gen_correlated_2d(int n, Real sigma, Real d, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("gen_correlated_2d: n must be even and >= 4");
  }
  if (sigma <= 0 || d <= 0) {
    throw std::invalid_argument("gen_correlated_2d: sigma and d must be positive");
  }
  Rng rng(seed);
  const Index cells = Index(n) * n;
  ArrayXc z(cells);
  for (Index i = 0; i < cells; ++i) z[i] = Complex(rng.normal(), 0);

  ArrayXc spec = dft_2d(z, n, n);
  for (Index t0 = 0; t0 < n; ++t0) {
    const Real w0 = Real(std::min<Index>(t0, n - t0));
    for (Index t1 = 0; t1 < n; ++t1) {
      const Real w1 = Real(std::min<Index>(t1, n - t1));
      const Real mag = std::sqrt(w0 * w0 + w1 * w1);
      spec[t0 * n + t1] *= (d * mag <= Real(1)) ? sigma : Real(0);
    }
  }
  const ArrayXr field = real_part_checked(idft_2d(spec, n, n));

  Potential p;
  p.dim = 2;
  p.units = {n, n};
  p.meta = {"correlated", {{"sigma", sigma}, {"d", d}}, seed};
  p.cell_values = field.square();
  validate_potential(p);
  return p;
}

ScalarField sample_on_grid(const Potential& p, const Grid& grid) {
  if (grid.dim() != p.dim || grid.units() != p.units) {
    throw std::invalid_argument("sample_on_grid: grid does not match potential layout");
  }
  ArrayXr values(grid.num_points());
  for (Index i = 0; i < grid.num_points(); ++i) {
    values[i] = p.cell_values[grid.cell_of_point(i)];
  }
  return ScalarField(grid, std::move(values));
}

}  // namespace llab
