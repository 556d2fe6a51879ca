#pragma once

#include <vector>

#include "hslab/common.hpp"

namespace hslab {
namespace detail {

// Fornberg weights: coefficients w_i with sum_i w_i f(x_i) = f^(m)(z) to the
// order the node count allows, for arbitrary (e.g. graded) nodes.
inline std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < m) throw InputError("fd_weights: need more nodes than the derivative order");
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

// Derivative of order m along a sampled line with arbitrary nodes, using a
// sliding window of `width` nodes (one-sided at the ends).
inline void fd_derivative_line(const std::vector<double>& nodes, const Complex* in, long stride,
                               int m, int width, Complex* out) {
  const int n = static_cast<int>(nodes.size());
  if (width > n) width = n;
  for (int i = 0; i < n; ++i) {
    int lo = i - width / 2;
    if (lo < 0) lo = 0;
    if (lo + width > n) lo = n - width;
    std::vector<double> local(nodes.begin() + lo, nodes.begin() + lo + width);
    std::vector<double> w = fd_weights(nodes[i], local, m);
    Complex acc(0.0, 0.0);
    for (int k = 0; k < width; ++k) acc += w[k] * in[(lo + k) * stride];
    out[i * stride] = acc;
  }
}

}  // namespace detail
}  // namespace hslab
