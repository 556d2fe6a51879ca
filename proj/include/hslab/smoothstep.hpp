#pragma once

#include <cmath>

namespace hslab {
namespace detail {

// C-infinity monotone transition built from the bump exp(-1/(1-t^2)):
// 0 for u <= 0, 1 for u >= 1. sharp scales the bump's exponent, giving a
// second admissible shape for cross-checks.
inline double smooth_transition(double u, double sharp = 1.0) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double h0 = std::exp(-sharp / u);
  double h1 = std::exp(-sharp / (1.0 - u));
  return h0 / (h0 + h1);
}

}  // namespace detail
}  // namespace hslab
