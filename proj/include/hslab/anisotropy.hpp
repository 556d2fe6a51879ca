#pragma once

#include <cmath>
#include <vector>

#include "hslab/common.hpp"

namespace hslab {

// Decomposition of R^n into l contiguous blocks of sizes dims[j], each block
// carrying a dilation weight weights[j] > 0. The anisotropic dilation acts as
// x_j -> lambda^{a_j} x_j on block j.
struct Anisotropy {
  std::vector<int> dims;
  std::vector<double> weights;

  int blocks() const { return static_cast<int>(dims.size()); }
  int total_dim() const {
    int n = 0;
    for (int d : dims) n += d;
    return n;
  }

  void validate() const {
    if (dims.empty() || dims.size() != weights.size())
      throw InputError("anisotropy: dims/weights size mismatch");
    for (int d : dims)
      if (d < 1) throw InputError("anisotropy: block dims must be >= 1");
    for (double a : weights)
      if (!(a > 0.0)) throw InputError("anisotropy: weights must be > 0");
  }

  static Anisotropy isotropic(int n) { return Anisotropy{{n}, {1.0}}; }
};

namespace detail {
// Euclidean norms of the blocks of x.
inline std::vector<double> block_norms(const Anisotropy& an, const double* x, int n) {
  if (n != an.total_dim()) throw InputError("anisotropy: point dimension mismatch");
  std::vector<double> r(an.dims.size(), 0.0);
  int off = 0;
  for (size_t j = 0; j < an.dims.size(); ++j) {
    double s = 0.0;
    for (int i = 0; i < an.dims[j]; ++i) s += x[off + i] * x[off + i];
    r[j] = std::sqrt(s);
    off += an.dims[j];
  }
  return r;
}
}  // namespace detail

// |x|_{d,a} = (sum_j |x_j|^{2/a_j})^{1/2}; quasi-homogeneous of degree 1 under
// the anisotropic dilation.
inline double aniso_distance(const Anisotropy& an, const std::vector<double>& x) {
  auto r = detail::block_norms(an, x.data(), static_cast<int>(x.size()));
  double s = 0.0;
  for (size_t j = 0; j < r.size(); ++j) s += std::pow(r[j], 2.0 / an.weights[j]);
  return std::sqrt(s);
}

// <x>_{d,a} = (1 + sum_j |x_j|^{2/a_j})^{1/2}.
inline double aniso_bessel(const Anisotropy& an, const std::vector<double>& x) {
  auto r = detail::block_norms(an, x.data(), static_cast<int>(x.size()));
  double s = 1.0;
  for (size_t j = 0; j < r.size(); ++j) s += std::pow(r[j], 2.0 / an.weights[j]);
  return std::sqrt(s);
}

// delta_lambda x, blockwise lambda^{a_j} x_j.
inline std::vector<double> aniso_dilate(const Anisotropy& an, double lambda,
                                        const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != an.total_dim())
    throw InputError("anisotropy: point dimension mismatch");
  std::vector<double> y(x.size());
  int off = 0;
  for (size_t j = 0; j < an.dims.size(); ++j) {
    double f = std::pow(lambda, an.weights[j]);
    for (int i = 0; i < an.dims[j]; ++i) y[off + i] = f * x[off + i];
    off += an.dims[j];
  }
  return y;
}

}  // namespace hslab
