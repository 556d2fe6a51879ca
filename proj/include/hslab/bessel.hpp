#pragma once

#include <cmath>
#include <vector>

#include "hslab/fft.hpp"
#include "hslab/field.hpp"

namespace hslab {

// Anisotropic Bessel potential of order sigma: the Fourier multiplier
//   sum_k (1 + |xi_k|^2)^{sigma / (2 a_k)}
// summed over the anisotropy blocks (|xi_k| is the Euclidean norm within
// block k). Note the definitional sum: with l blocks and sigma = 0 every
// block contributes 1, so the operator is l times the identity.
inline DiscreteField bessel_potential(const DiscreteField& f, double sigma,
                                      const Anisotropy& aniso) {
  f.validate();
  if (aniso.total_dim() != static_cast<int>(f.axes.size()))
    throw InputError("bessel_potential: anisotropy does not cover the axes");
  for (const Axis& ax : f.axes)
    if (!ax.periodic()) throw InputError("bessel_potential: axes must be periodic (extend first)");

  const std::vector<int> shape = f.shape();
  const long total = f.axis_total();
  std::vector<double> mult(total);
  {
    long i = 0;
    for_each_index(shape, [&](const std::vector<int>& idx) {
      double m = 0.0;
      int axis = 0;
      for (int k = 0; k < aniso.blocks(); ++k) {
        double x2 = 0.0;
        for (int d = 0; d < aniso.dims[k]; ++d, ++axis) {
          double xi = f.axes[axis].freq(idx[axis]);
          x2 += xi * xi;
        }
        m += std::pow(1.0 + x2, 0.5 * sigma / aniso.weights[k]);
      }
      mult[i++] = m;
    });
  }

  DiscreteField out = f;
  for (int c = 0; c < f.components; ++c) {
    std::vector<Complex> comp(f.values.begin() + c * total, f.values.begin() + (c + 1) * total);
    fft_all(comp, shape, false);
    for (long i = 0; i < total; ++i) comp[i] *= mult[i];
    fft_all(comp, shape, true);
    std::copy(comp.begin(), comp.end(), out.values.begin() + c * total);
  }
  return out;
}

}  // namespace hslab
