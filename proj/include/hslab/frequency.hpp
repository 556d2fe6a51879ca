#pragma once

#include <cmath>
#include <vector>

#include "hslab/anisotropy.hpp"
#include "hslab/common.hpp"

namespace hslab {

// A point (xi', lambda) in tangential frequency x spectral parameter space.
struct FrequencyPoint {
  std::vector<double> xi_prime;
  Complex lambda{0.0, 0.0};
};

// <xi', lambda>_a with a = (1/order, 1), i.e. (1 + |xi'|^{2*order} + |lambda|^2)^{1/2}.
// This is the joint Bessel weight in which the symbol calculus is uniform.
inline double joint_bessel(const FrequencyPoint& fp, int order) {
  double s = 1.0;
  double x2 = 0.0;
  for (double v : fp.xi_prime) x2 += v * v;
  s += std::pow(x2, static_cast<double>(order));  // |xi'|^{2/a1} with a1 = 1/order
  s += std::norm(fp.lambda);
  return std::sqrt(s);
}

// Homogeneous variant, (|xi'|^{2*order} + |lambda|^2)^{1/2}; vanishes only at
// the origin of the compound space.
inline double joint_distance(const FrequencyPoint& fp, int order) {
  double x2 = 0.0;
  for (double v : fp.xi_prime) x2 += v * v;
  return std::sqrt(std::pow(x2, static_cast<double>(order)) + std::norm(fp.lambda));
}

// Rescaled variables for the model problem (1+lambda) v + A(D) v = 0:
//   rho   = <xi',lambda>_a^{a_1},   a_1 = 1/order,
//   b     = xi' / rho,
//   sigma = (1+lambda) / rho^order.
// (b, sigma) ranges over a compact set bounded away from the origin:
// |b|^2 + |sigma|^{2/order} is bounded above and below.
struct RescaledVars {
  double rho = 1.0;
  std::vector<double> b;
  Complex sigma{1.0, 0.0};
};

inline RescaledVars rescale_vars(const FrequencyPoint& fp, int order) {
  if (order < 2 || order % 2 != 0) throw InputError("rescale_vars: order must be even, >= 2");
  RescaledVars rv;
  double bes = joint_bessel(fp, order);
  rv.rho = std::pow(bes, 1.0 / order);
  rv.b.resize(fp.xi_prime.size());
  for (size_t i = 0; i < fp.xi_prime.size(); ++i) rv.b[i] = fp.xi_prime[i] / rv.rho;
  rv.sigma = (1.0 + fp.lambda) / std::pow(rv.rho, order);
  return rv;
}

// Homogeneous rescaling used by the principal-symbol conditions (no +1 shift):
// s = joint_distance^{a_1}, b = xi'/s, sigma = lambda/s^order. Only defined
// away from (xi', lambda) = 0.
inline RescaledVars rescale_vars_homogeneous(const FrequencyPoint& fp, int order) {
  if (order < 2 || order % 2 != 0)
    throw InputError("rescale_vars_homogeneous: order must be even, >= 2");
  double dist = joint_distance(fp, order);
  if (dist <= 0.0) throw InputError("rescale_vars_homogeneous: (xi', lambda) = 0");
  RescaledVars rv;
  rv.rho = std::pow(dist, 1.0 / order);
  rv.b.resize(fp.xi_prime.size());
  for (size_t i = 0; i < fp.xi_prime.size(); ++i) rv.b[i] = fp.xi_prime[i] / rv.rho;
  rv.sigma = fp.lambda / std::pow(rv.rho, order);
  return rv;
}

// Membership of z in the open sector Sigma_phi = {|arg z| < phi, z != 0}.
inline bool in_sector(Complex z, double phi) {
  if (z == Complex(0.0, 0.0)) return false;
  return std::abs(std::arg(z)) < phi;
}

}  // namespace hslab
