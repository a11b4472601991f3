#include "llab/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace llab {

namespace {

bool is_pow2(Index n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey; sign = -1 forward, +1 inverse (unscaled).
void fft_pow2(ArrayXc& a, int sign) {
  const Index n = a.size();
  for (Index i = 1, j = 0; i < n; ++i) {
    Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (Index len = 2; len <= n; len <<= 1) {
    const Real ang = Real(sign) * Real(2) * std::numbers::pi_v<Real> / Real(len);
    const Complex wl = std::polar(Real(1), ang);
    for (Index i = 0; i < n; i += len) {
      Complex w(1, 0);
      for (Index j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

ArrayXc direct(const ArrayXc& x, int sign) {
  const Index n = x.size();
  ArrayXc out(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc(0, 0);
    for (Index j = 0; j < n; ++j) {
      const Real ang =
          Real(sign) * Real(2) * std::numbers::pi_v<Real> * Real(j) * Real(k) / Real(n);
      acc += x[j] * std::polar(Real(1), ang);
    }
    out[k] = acc;
  }
  return out;
}

ArrayXc transform(const ArrayXc& x, int sign) {
  if (x.size() < 1) throw std::invalid_argument("dft: length must be >= 1");
  if (is_pow2(x.size())) {
    ArrayXc a = x;
    fft_pow2(a, sign);
    return a;
  }
  return direct(x, sign);
}

}  // namespace

ArrayXc dft(const ArrayXc& x) { return transform(x, -1); }

ArrayXc idft(const ArrayXc& x) {
  ArrayXc out = transform(x, +1);
  out /= Complex(Real(x.size()), 0);
  return out;
}

namespace {

ArrayXc transform_2d(const ArrayXc& x, Index rows, Index cols, bool inverse) {
  if (x.size() != rows * cols) {
    throw std::invalid_argument("dft_2d: buffer size must equal rows*cols");
  }
  auto line = [&](const ArrayXc& v) { return inverse ? idft(v) : dft(v); };
  ArrayXc out = x;
  ArrayXc tmp;
  for (Index r = 0; r < rows; ++r) {
    tmp = line(out.segment(r * cols, cols));
    out.segment(r * cols, cols) = tmp;
  }
  ArrayXc col(rows);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) col[r] = out[r * cols + c];
    tmp = line(col);
    for (Index r = 0; r < rows; ++r) out[r * cols + c] = tmp[r];
  }
  return out;
}

}  // namespace

ArrayXc dft_2d(const ArrayXc& x, Index rows, Index cols) {
  return transform_2d(x, rows, cols, false);
}

ArrayXc idft_2d(const ArrayXc& x, Index rows, Index cols) {
  return transform_2d(x, rows, cols, true);
}

}  // namespace llab
