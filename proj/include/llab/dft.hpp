#pragma once

#include "llab/types.hpp"

namespace llab {

/// Forward discrete Fourier transform, X_k = sum_j x_j e^{-2 pi i j k / n}.
/// Radix-2 fast path for power-of-two lengths, direct O(n^2) sum otherwise.
ArrayXc dft(const ArrayXc& x);

/// Inverse transform; idft(dft(x)) == x to roundoff.
ArrayXc idft(const ArrayXc& x);

/// 2D transforms on a row-major rows x cols buffer, applied axis by axis.
ArrayXc dft_2d(const ArrayXc& x, Index rows, Index cols);
ArrayXc idft_2d(const ArrayXc& x, Index rows, Index cols);

}  // namespace llab
