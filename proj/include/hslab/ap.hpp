#pragma once

#include <cmath>
#include <limits>

#include "hslab/common.hpp"

namespace hslab {

namespace detail {

// Mean of |x|^gamma over [a, b] via the signed antiderivative
// sign(x)|x|^{1+gamma}/(1+gamma), valid across 0 for gamma > -1.
inline double power_mean(double gamma, double a, double b) {
  auto F = [gamma](double x) {
    return (x >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(x), 1.0 + gamma) / (1.0 + gamma);
  };
  return (F(b) - F(a)) / (b - a);
}

}  // namespace detail

// Muckenhoupt characteristic estimate of the power weight w(x) = |x|^gamma
// on R:
//   [w]_{A_p} = sup_I (avg_I w) (avg_I w^{-1/(p-1)})^{p-1}.
// The weight is homogeneous, so the product is scale invariant and every
// interval is similar to [t-1, t+1] for some t >= 0; refinement R sweeps t
// over the dyadic grid j 2^{-R}, j = 0..4^R. Families are nested in R, so the
// estimate is monotone nondecreasing under refinement, approaching the true
// supremum from below. Infinite as soon as either exponent leaves (-1, inf),
// i.e. outside gamma in (-1, p-1).
inline double ap_characteristic(double gamma, double p, int refinement) {
  if (!(p > 1.0)) throw InputError("ap_characteristic: p must be > 1");
  if (refinement < 0 || refinement > 12)
    throw InputError("ap_characteristic: refinement must be in [0, 12]");
  if (gamma <= -1.0) return std::numeric_limits<double>::infinity();
  const double dual = -gamma / (p - 1.0);
  if (dual <= -1.0) return std::numeric_limits<double>::infinity();

  double sup = 0.0;
  const double step = std::ldexp(1.0, -refinement);
  const long count = 1L << (2 * refinement);
  for (long j = 0; j <= count; ++j) {
    double t = j * step;
    double v = detail::power_mean(gamma, t - 1.0, t + 1.0) *
               std::pow(detail::power_mean(dual, t - 1.0, t + 1.0), p - 1.0);
    sup = std::max(sup, v);
  }
  return sup;
}

}  // namespace hslab
