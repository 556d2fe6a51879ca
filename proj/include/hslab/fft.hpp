#pragma once

#include <vector>

#include "hslab/common.hpp"

namespace hslab {

namespace detail {

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace detail

// In-place radix-2 FFT along one strided line of length n. Forward transform
// is sum_j f_j e^{-2 pi i jk/n} (matching the library's e^{-i x xi}
// convention); the inverse carries the 1/n.
inline void fft_line(Complex* data, int n, int stride, bool inverse) {
  if (!detail::is_pow2(n)) throw InputError("fft: length must be a power of two");
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(data[i * static_cast<long>(stride)], data[j * static_cast<long>(stride)]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / len * (inverse ? 1.0 : -1.0);
    Complex wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        Complex* u = data + (i + k) * static_cast<long>(stride);
        Complex* v = data + (i + k + len / 2) * static_cast<long>(stride);
        Complex t = *v * w;
        *v = *u - t;
        *u += t;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (int i = 0; i < n; ++i) data[i * static_cast<long>(stride)] /= static_cast<double>(n);
}

// FFT along one axis of a row-major tensor.
inline void fft_axis(std::vector<Complex>& v, const std::vector<int>& shape, int axis, bool inverse) {
  long stride = 1;
  for (size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  long outer = 1;
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  const int n = shape[axis];
  for (long o = 0; o < outer; ++o)
    for (long i = 0; i < stride; ++i)
      fft_line(v.data() + o * n * stride + i, n, static_cast<int>(stride), inverse);
}

inline void fft_all(std::vector<Complex>& v, const std::vector<int>& shape, bool inverse) {
  for (size_t a = 0; a < shape.size(); ++a) fft_axis(v, shape, static_cast<int>(a), inverse);
}

}  // namespace hslab
