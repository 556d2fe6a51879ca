#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hslab/first_order.hpp"
#include "hslab/stable_projection.hpp"
#include "hslab/stable_roots.hpp"

namespace hslab {

// Quantitative Lopatinskii-Shapiro check at one (xi', lambda) != 0 with the
// principal symbols (no zero-order shift): value is the smallest singular
// value of Rows * Q, where Q is an orthonormal basis of the decaying subspace
// of the homogeneous first-order reduction and Rows the rescaled boundary
// evaluation. value > 0 iff the only decaying solution of
//   lambda w + A_#(xi', D_y) w = 0,  B_{j,#}(xi', D_y) w(0) = 0
// is w = 0; the number itself is the uniform lower bound being probed.
struct LSResult {
  double value = 0.0;
  double gap = 0.0;                  // min |Im| of the normalized characteristic roots
  std::vector<Complex> eigs;         // normalized roots tau/s, decaying first
  RescaledVars rv;                   // homogeneous rescaling used
};

inline LSResult ls_condition(const BVSystem& sys, const FrequencyPoint& fp,
                             double gap_tol = 1e-10) {
  sys.validate_half_space();
  RescaledVars rv = rescale_vars_homogeneous(fp, sys.order);
  FirstOrderReduction red = reduce_first_order(sys, rv);
  StableDecomposition sd;
  try {
    sd = stable_projection(red.A0, gap_tol, sys.half_order() * sys.state_dim);
  } catch (const GuardError& e) {
    if (e.kind() == Guard::SpectralGapTooSmall)
      throw GuardError(Guard::RealAxisRoot, "characteristic root on the real axis");
    throw;
  }
  Matrix rows = boundary_rows(sys, rv.b);
  Eigen::JacobiSVD<Matrix> svd(rows * sd.Q);
  LSResult out;
  out.value = svd.singularValues().minCoeff();
  out.gap = sd.gap;
  out.eigs = sd.eigs;
  out.rv = rv;
  return out;
}

// Independent evaluation of the same number that never forms a Schur
// decomposition: the decaying subspace is grown by integrating the reduced
// ODE backward (under the backward flow the decaying modes dominate), with
// QR renormalization against overflow. Agreement with ls_condition is a
// build-correctness check, so this route shares no linear algebra with it
// beyond QR and the SVD of the final m N x m N product.
inline LSResult ls_condition_ode(const BVSystem& sys, const FrequencyPoint& fp,
                                 double length = 80.0, unsigned seed = 12345) {
  sys.validate_half_space();
  RescaledVars rv = rescale_vars_homogeneous(fp, sys.order);
  FirstOrderReduction red = reduce_first_order(sys, rv);
  const int dim = static_cast<int>(red.A0.rows());
  const int p = sys.half_order() * sys.state_dim;

  Matrix A = Complex(0.0, -1.0) * red.A0;  // dW/ds = A W integrates x1 backward
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix W(dim, p);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < p; ++j) W(i, j) = Complex(gauss(rng), gauss(rng));
  W = Eigen::HouseholderQR<Matrix>(W).householderQ() * Matrix::Identity(dim, p);

  double h = 0.05 / std::max(1.0, red.A0.norm());
  int nsteps = static_cast<int>(std::ceil(length / h));
  h = length / nsteps;
  for (int step = 0; step < nsteps; ++step) {
    Matrix k1 = A * W;
    Matrix k2 = A * (W + 0.5 * h * k1);
    Matrix k3 = A * (W + 0.5 * h * k2);
    Matrix k4 = A * (W + h * k3);
    W += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % 20 == 19 || step == nsteps - 1)
      W = Eigen::HouseholderQR<Matrix>(W).householderQ() * Matrix::Identity(dim, p);
  }

  Matrix rows = boundary_rows(sys, rv.b);
  Eigen::JacobiSVD<Matrix> svd(rows * W);
  LSResult out;
  out.value = svd.singularValues().minCoeff();
  out.rv = rv;
  Eigen::ComplexEigenSolver<Matrix> es(red.A0);
  out.gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i) {
    out.eigs.push_back(es.eigenvalues()(i));
    out.gap = std::min(out.gap, std::abs(es.eigenvalues()(i).imag()));
  }
  return out;
}

// Classical Lopatinskii matrix for scalar equations (state_dim == 1): row j
// holds the coefficients of the remainder of the rescaled boundary symbol
// p_j(u) = sum_{|beta| = m_j} b_{j,beta} b^{beta'} u^{beta_1} after division
// by the monic stable factor prod(u - tau_i/s). Its determinant vanishes
// exactly where ls_condition vanishes, but the construction goes through
// root-finding and synthetic division instead of invariant subspaces.
inline Matrix lopatinskii_matrix(const BVSystem& sys, const FrequencyPoint& fp) {
  sys.validate_half_space();
  if (sys.state_dim != 1)
    throw InputError("lopatinskii_matrix: scalar systems only");
  const int m = sys.half_order();
  RescaledVars rv = rescale_vars_homogeneous(fp, sys.order);
  StableRoots roots = stable_roots(sys, fp);

  // Monic stable polynomial, ascending coefficients: prod_i (u - tau_i / s).
  std::vector<Complex> stable_poly{Complex(1.0, 0.0)};
  for (Complex tau : roots.stable) {
    Complex r = tau / rv.rho;
    std::vector<Complex> next(stable_poly.size() + 1, Complex(0.0, 0.0));
    for (size_t k = 0; k < stable_poly.size(); ++k) {
      next[k + 1] += stable_poly[k];
      next[k] -= r * stable_poly[k];
    }
    stable_poly = std::move(next);
  }

  std::vector<Complex> bc(rv.b.begin(), rv.b.end());
  Matrix L = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    const BoundaryOp& op = sys.boundary[j];
    std::vector<Complex> poly(op.order + 1, Complex(0.0, 0.0));
    for (const auto& [be, c] : op.coeffs) {
      if (mi_order(be) != op.order) continue;
      MultiIndex bprime(be.begin() + 1, be.end());
      poly[be[0]] += c(0, 0) * mi_power(bc, bprime);
    }
    // Synthetic division by the monic stable_poly (ascending coefficients).
    std::vector<Complex> rem = poly;
    for (int k = static_cast<int>(rem.size()) - 1; k >= m; --k) {
      Complex q = rem[k];
      for (int i = 0; i <= m; ++i) rem[k - m + i] -= q * stable_poly[i];
      rem[k] = Complex(0.0, 0.0);
    }
    for (int k = 0; k < m && k < static_cast<int>(rem.size()); ++k) L(j, k) = rem[k];
  }
  return L;
}

}  // namespace hslab
