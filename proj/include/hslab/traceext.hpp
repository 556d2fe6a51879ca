#pragma once

#include <cmath>
#include <vector>

#include "hslab/lp.hpp"
#include "hslab/norms.hpp"

namespace hslab {

// Boundary trace as the summed Littlewood-Paley series tau f = sum_k (S_k f)|_{x1=0}.
// increments[k] is the sup of piece k on the boundary; cauchy_ok reports
// whether the partial sums have visibly settled (the top increment fell an
// order of magnitude below the peak), the numerical stand-in for convergence
// of the series.
struct TraceResult {
  DiscreteField boundary;
  std::vector<double> increments;
  bool cauchy_ok = true;
};

inline TraceResult trace(const DiscreteField& f, const LPFamily& fam,
                         const SeeleyData& sd = detail::default_seeley()) {
  f.validate();
  if (f.axes.empty() || f.axes[0].role != AxisRole::Normal || f.axes[0].periodic())
    throw InputError("trace: axis 0 must be a half-line normal axis");
  std::vector<DiscreteField> pieces = lp_pieces(f, fam, sd);

  Grid baxes(f.axes.begin() + 1, f.axes.end());
  Anisotropy ban;
  {
    // Drop the normal direction from the anisotropy (its block must be 1-dim
    // or shrinkable by one).
    ban = f.aniso;
    if (ban.dims[0] > 1)
      --ban.dims[0];
    else {
      ban.dims.erase(ban.dims.begin());
      ban.weights.erase(ban.weights.begin());
    }
  }
  TraceResult out;
  out.boundary = DiscreteField::zeros(baxes, f.components, ban);
  const long btotal = out.boundary.axis_total();
  for (size_t k = 0; k < pieces.size(); ++k) {
    const long total = pieces[k].axis_total();
    double inc = 0.0;
    for (int c = 0; c < f.components; ++c) {
      const Complex* slab = pieces[k].values.data() + c * total;  // x1 = 0 is the first slab
      for (long t = 0; t < btotal; ++t) {
        out.boundary.values[c * btotal + t] += slab[t];
        inc = std::max(inc, std::abs(slab[t]));
      }
    }
    out.increments.push_back(inc);
  }
  double peak = 0.0;
  for (double v : out.increments) peak = std::max(peak, v);
  out.cauchy_ok = out.increments.empty() || peak == 0.0 || out.increments.back() <= 0.1 * peak;
  return out;
}

namespace detail {

// rho with rho^ supported in [1, 2] and rho(0) = 1: inverse transform of the
// bump exp(-1/(1-t^2)) on that band, normalized. Simpson quadrature; the
// integrand is smooth and compactly supported, so this converges fast.
class RhoProfile {
 public:
  explicit RhoProfile(int quad = 257) : quad_(quad | 1) {}

  Complex operator()(double x) const {
    Complex num(0.0, 0.0);
    double den = 0.0;
    const double h = 1.0 / (quad_ - 1);
    for (int i = 0; i < quad_; ++i) {
      double t = 2.0 * (i * h) - 1.0;  // [-1, 1]
      double xi = 1.5 + 0.5 * t;
      double bump = (std::abs(t) < 1.0) ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
      double w = (i == 0 || i == quad_ - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      num += w * bump * Complex(std::cos(x * xi), std::sin(x * xi));
      den += w * bump;
    }
    return num / den;
  }

 private:
  int quad_;
};

}  // namespace detail

// Extension of boundary data along the normal direction,
//   ext g = sum_k rho(2^{k a1} x1) (S_k g)(x'),
// rho as above. Since rho(0) = 1 and sum_k S_k = id on the covered band,
// trace(extend g) recovers g. a1 is the normal direction's anisotropy
// weight; fam analyzes the boundary field.
inline DiscreteField extend(const DiscreteField& g, const LPFamily& fam, const Axis& normal,
                            double a1, const SeeleyData& sd = detail::default_seeley()) {
  g.validate();
  for (const Axis& ax : g.axes)
    if (!ax.periodic()) throw InputError("extend: boundary axes must be periodic");
  std::vector<DiscreteField> pieces = lp_pieces(g, fam, sd);

  Grid axes;
  axes.push_back(normal);
  for (const Axis& ax : g.axes) axes.push_back(ax);
  Anisotropy an;
  an.dims.push_back(1);
  an.weights.push_back(a1);
  for (size_t j = 0; j < g.aniso.dims.size(); ++j) {
    an.dims.push_back(g.aniso.dims[j]);
    an.weights.push_back(g.aniso.weights[j]);
  }
  DiscreteField out = DiscreteField::zeros(axes, g.components, an);

  detail::RhoProfile rho;
  const long btotal = g.axis_total();
  for (size_t k = 0; k < pieces.size(); ++k) {
    const double scale = std::pow(2.0, a1 * static_cast<double>(k));
    for (int i = 0; i < normal.count; ++i) {
      Complex r = rho(scale * normal.coord(i));
      for (int c = 0; c < g.components; ++c) {
        Complex* dst = out.values.data() + c * out.axis_total() + static_cast<long>(i) * btotal;
        const Complex* src = pieces[k].values.data() + c * btotal;
        for (long t = 0; t < btotal; ++t) dst[t] += r * src[t];
      }
    }
  }
  return out;
}

}  // namespace hslab
