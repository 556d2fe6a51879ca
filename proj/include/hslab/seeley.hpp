#pragma once

#include <cmath>
#include <vector>

#include "hslab/field.hpp"
#include "hslab/smoothstep.hpp"

namespace hslab {

// Reflection-free extension across x1 = 0: for x < 0,
//   (Ef)(x) = sum_k a_k phi(b_k x) f(b_k x),   b_k = -2^k,
// where the a_k solve the moment system sum_k a_k b_k^l = 1 (l = 0..K-1), so
// the extension matches one-sided derivatives at 0 to the order the moments
// reach. With b_k = -2^k, sampling at -j h only ever reads f at index 2^k j:
// the extension is exact index arithmetic on a uniform grid.
struct SeeleyData {
  int terms = 0;
  std::vector<long double> a;
};

// a_k is the Lagrange basis polynomial for nodes {b_j} evaluated at 1:
// a_k = prod_{j != k} (1 - b_j)/(b_k - b_j). Evaluated factor by factor in
// long double; every factor is a small ratio of exact integers, and the
// factors grow like 2^{K^2/2}, which is why K is capped.
inline SeeleyData seeley_coefficients(int terms) {
  if (terms < 1) throw InputError("seeley: need at least one term");
  if (terms > 12)
    throw GuardError(Guard::IllConditioned,
                     "seeley: moment system unusable in double precision beyond 12 terms");
  SeeleyData sd;
  sd.terms = terms;
  sd.a.resize(terms);
  for (int k = 0; k < terms; ++k) {
    long double prod = 1.0L;
    for (int j = 0; j < terms; ++j) {
      if (j == k) continue;
      long double num = 1.0L + std::pow(2.0L, static_cast<long double>(j));
      long double den = std::pow(2.0L, static_cast<long double>(j)) -
                        std::pow(2.0L, static_cast<long double>(k));
      prod *= num / den;
    }
    sd.a[k] = prod;
  }
  return sd;
}

// |sum_k a_k b_k^l - 1|; zero in exact arithmetic for l < terms.
inline double seeley_moment_defect(const SeeleyData& sd, int l) {
  long double s = 0.0L;
  for (int k = 0; k < sd.terms; ++k) {
    long double bkl = 1.0L;
    for (int i = 0; i < l; ++i) bkl *= -std::pow(2.0L, static_cast<long double>(k));
    s += sd.a[k] * bkl;
  }
  return static_cast<double>(std::fabs(s - 1.0L));
}

// Extend a field with a uniform normal axis [0, X] to the torus [-X, X).
// The cutoff phi is 1 on [0, X/2] and 0 from X on, so the left half is
// supported in (-X, 0]; the right half is f itself, which is assumed to have
// decayed by x = X (the seam at +-X is only as smooth as f(X) is small).
inline DiscreteField seeley_extend(const DiscreteField& f, const SeeleyData& sd) {
  f.validate();
  if (f.axes.empty() || f.axes[0].role != AxisRole::Normal)
    throw InputError("seeley_extend: axis 0 must be a normal axis");
  if (f.axes[0].spacing != Spacing::Uniform)
    throw InputError("seeley_extend: normal axis must be uniform");
  const int n = f.axes[0].count;
  const double X = f.axes[0].extent;
  const double h = X / (n - 1);

  Axis ext;
  ext.count = 2 * (n - 1);
  ext.extent = 2.0 * X;
  ext.role = AxisRole::Normal;
  ext.origin = -X;
  // ext.coord(j) = -X + j h; j = n-1 is x = 0.

  Grid axes = f.axes;
  axes[0] = ext;
  DiscreteField g = DiscreteField::zeros(axes, f.components, f.aniso);

  auto phi = [X](double s) {
    return detail::smooth_transition((X - s) / (0.5 * X));  // 1 for s <= X/2, 0 for s >= X
  };
  // Weights for the left samples: at x = -j h, (Ef)(x) = sum_k a_k phi(2^k j h) f[2^k j].
  const long inner = f.axis_total() / n;     // per-slab size of axes 1..r
  const long ginner = g.axis_total() / ext.count;
  for (int c = 0; c < f.components; ++c) {
    const Complex* src = f.values.data() + static_cast<long>(c) * f.axis_total();
    Complex* dst = g.values.data() + static_cast<long>(c) * g.axis_total();
    for (int i = 0; i < n - 1; ++i)  // right half, x = i h
      for (long t = 0; t < inner; ++t) dst[(n - 1 + i) * ginner + t] = src[i * inner + t];
    for (int j = 1; j < n; ++j) {  // left half, x = -j h at slab n-1-j
      Complex* out = dst + (n - 1 - j) * ginner;
      for (int k = 0; k < sd.terms; ++k) {
        long idx = (1L << k) * j;
        if (idx > n - 1) break;
        double w = phi(idx * h);
        if (w == 0.0) continue;
        double aw = static_cast<double>(sd.a[k]) * w;
        const Complex* in = src + idx * inner;
        for (long t = 0; t < inner; ++t) out[t] += aw * in[t];
      }
    }
  }
  return g;
}

// Right inverse of seeley_extend on the sample level: pull back the x >= 0
// samples, reading the far endpoint from the torus seam.
inline DiscreteField restrict_normal(const DiscreteField& g, const Axis& normal) {
  g.validate();
  if (g.axes.empty() || !(g.axes[0].origin < 0.0))
    throw InputError("restrict_normal: axis 0 is not an extended axis");
  const int n = normal.count;
  if (g.axes[0].count != 2 * (n - 1))
    throw InputError("restrict_normal: axis size mismatch");
  Grid axes = g.axes;
  axes[0] = normal;
  DiscreteField f = DiscreteField::zeros(axes, g.components, g.aniso);
  const long inner = f.axis_total() / n;
  const long ginner = g.axis_total() / g.axes[0].count;
  for (int c = 0; c < g.components; ++c) {
    const Complex* src = g.values.data() + static_cast<long>(c) * g.axis_total();
    Complex* dst = f.values.data() + static_cast<long>(c) * f.axis_total();
    for (int i = 0; i < n; ++i) {
      long j = (i < n - 1) ? (n - 1 + i) : 0;  // x = X wraps to the seam
      for (long t = 0; t < inner; ++t) dst[i * inner + t] = src[j * ginner + t];
    }
  }
  return f;
}

}  // namespace hslab
