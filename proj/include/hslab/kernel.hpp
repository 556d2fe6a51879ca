#pragma once

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hslab/boundary_solve.hpp"
#include "hslab/first_order.hpp"
#include "hslab/frequency.hpp"
#include "hslab/stable_projection.hpp"

namespace hslab {

namespace detail {

inline Complex sinhc(Complex z) {
  if (std::abs(z) < 1e-2) {
    Complex z2 = z * z;
    return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sinh(z) / z;
}

// exp of a small upper-triangular matrix; closed forms for sizes 1 and 2
// (the common scalar second-order cases), Pade otherwise.
inline Matrix expm_upper_triangular(const Matrix& T) {
  const int p = static_cast<int>(T.rows());
  if (p == 1) {
    Matrix E(1, 1);
    E(0, 0) = std::exp(T(0, 0));
    return E;
  }
  if (p == 2) {
    const Complex a = T(0, 0);
    const Complex b = T(1, 1);
    Matrix E = Matrix::Zero(2, 2);
    E(0, 0) = std::exp(a);
    E(1, 1) = std::exp(b);
    E(0, 1) = T(0, 1) * std::exp(0.5 * (a + b)) * sinhc(0.5 * (a - b));
    return E;
  }
  return T.exp();
}

}  // namespace detail

// Everything needed to evaluate the solution operators of the model problem
//   (1 + lambda) v + A(D) v = 0 on the half-space,  B_j(D) v = g_j on the boundary
// at a single tangential frequency: state(j, x1) is the reduced-state kernel
// whose product with g_j gives (V_0 .. V_{2m-1})(x1) for data concentrated in
// component j, eval(j, x1, k) its D_{x1}^k solution block. All x1-dependence
// runs through e^{i rho T11 x1} on the decaying triangular block, so
// evaluation is stable for every x1 >= 0.
struct PoissonKernel {
  FrequencyPoint fp;
  RescaledVars rv;
  FirstOrderReduction red;
  StableDecomposition sd;
  BoundarySolve bs;
  int m = 1;
  int N = 1;
  std::vector<int> border;  // boundary orders m_j

  // D_{x1}^k of e^{i rho A0 x1} M restricted to data block j, scaled by rho^{-m_j}:
  // a 2mN x N matrix.
  Matrix state(int j, double x1, int k = 0) const {
    Matrix S = Complex(0.0, 1.0) * rv.rho * x1 * sd.T11;
    Matrix E = detail::expm_upper_triangular(S);
    for (int i = 0; i < k; ++i) E = E * (rv.rho * sd.T11);
    Matrix full = sd.Q * E * bs.C;
    return full.middleCols(j * N, N) / std::pow(rv.rho, border[j]);
  }

  // Solution block of state(): the N x N matrix K with D_{x1}^k v(x1) = K g_j.
  Matrix eval(int j, double x1, int k = 0) const { return state(j, x1, k).topRows(N); }
};

struct KernelOptions {
  double gap_tol = 1e-10;
  double ls_tol = 1e-10;
};

inline PoissonKernel build_poisson_kernel(const BVSystem& sys, const FrequencyPoint& fp,
                                          const KernelOptions& opt = {}) {
  sys.validate_half_space();
  PoissonKernel k;
  k.fp = fp;
  k.rv = rescale_vars(fp, sys.order);
  k.red = reduce_first_order(sys, k.rv);
  k.sd = stable_projection(k.red.A0, opt.gap_tol, sys.half_order() * sys.state_dim);
  k.bs = stable_boundary_solve(sys, k.red, k.sd, opt.ls_tol);
  k.m = sys.half_order();
  k.N = sys.state_dim;
  for (const auto& op : sys.boundary) k.border.push_back(op.order);
  return k;
}

}  // namespace hslab
