#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "llab/types.hpp"

namespace llab {

/// SplitMix64 stream. The same seed produces the same stream on every
/// platform, which is what makes potential realizations reproducible.
///
/// Uniforms are the top 53 bits of the next output scaled to [0, 1).
/// Gaussians use Box-Muller on consecutive uniforms:
///   r = sqrt(-2 ln(1 - u1)),  theta = 2 pi u2,
/// returning r cos(theta) then r sin(theta). The second value of each pair
/// is cached, so a stream of normals consumes exactly one uniform pair per
/// two values.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  Real uniform() { return Real(next_u64() >> 11) * 0x1.0p-53; }

  Real normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Real u1 = uniform();
    const Real u2 = uniform();
    const Real r = std::sqrt(Real(-2) * std::log(Real(1) - u1));
    const Real theta = Real(2) * std::numbers::pi_v<Real> * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  Real spare_ = 0;
};

}  // namespace llab
