#pragma once

#include <Eigen/Dense>

#include "hslab/bv_system.hpp"
#include "hslab/frequency.hpp"

namespace hslab {

// First-order reduction of the rescaled model ODE on the half-line.
//
// With V_k = rho^{-k} D_{x1}^k w (k = 0..2m-1, each C^N) the equation
// sigma rho^{2m} w + A_#(rho b, D_{x1}) w = 0 becomes D_{x1} V = rho A0(b, sigma) V,
// i.e. V(x1) = e^{i rho A0 x1} V(0). A0 is the companion-block matrix below;
// it depends on (b, sigma) only.
struct FirstOrderReduction {
  Matrix A0;  // 2mN x 2mN
  RescaledVars rv;
  int m = 1;  // half order
  int N = 1;  // state dim
};

inline FirstOrderReduction reduce_first_order(const BVSystem& sys, const RescaledVars& rv) {
  sys.validate();
  const int N = sys.state_dim;
  const int m = sys.half_order();
  const int twom = sys.order;
  if (static_cast<int>(rv.b.size()) != sys.dim - 1)
    throw InputError("reduce_first_order: b dimension mismatch");

  MultiIndex lead(sys.dim, 0);
  lead[0] = twom;
  auto it = sys.interior.find(lead);
  if (it == sys.interior.end())
    throw GuardError(Guard::LeadingCoeffSingular, "no pure-normal top-order coefficient");
  Eigen::JacobiSVD<Matrix> svd(it->second, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin < 1e-12 * std::max(1.0, smax))
    throw GuardError(Guard::LeadingCoeffSingular, "leading normal coefficient is singular");
  Matrix lead_inv = it->second.inverse();

  FirstOrderReduction red;
  red.rv = rv;
  red.m = m;
  red.N = N;
  red.A0 = Matrix::Zero(twom * N, twom * N);
  for (int k = 0; k + 1 < twom; ++k)
    red.A0.block(k * N, (k + 1) * N, N, N) = Matrix::Identity(N, N);

  std::vector<Complex> bc(rv.b.begin(), rv.b.end());
  // Last block row: -a_L^{-1} [ sigma I at block 0  +  sum_{|alpha|=2m, alpha_1<2m} a_alpha b^{alpha'} at block alpha_1 ].
  std::vector<Matrix> row(twom, Matrix::Zero(N, N));
  row[0] = rv.sigma * Matrix::Identity(N, N);
  for (const auto& [a, c] : sys.interior) {
    if (mi_order(a) != twom || a[0] == twom) continue;
    MultiIndex aprime(a.begin() + 1, a.end());
    row[a[0]] += c * mi_power(bc, aprime);
  }
  for (int k = 0; k < twom; ++k)
    red.A0.block((twom - 1) * N, k * N, N, N) = -lead_inv * row[k];
  return red;
}

// Rescaled boundary evaluation rows. Row block j expresses
// rho^{-m_j} B_{j,#}(rho b, D_{x1}) w (0) = Rows_j V(0); each exponent of rho
// cancels because |beta'| + beta_1 = m_j, so Rows depends on b only.
inline Matrix boundary_rows(const BVSystem& sys, const std::vector<double>& b) {
  const int N = sys.state_dim;
  const int twom = sys.order;
  const int mops = static_cast<int>(sys.boundary.size());
  if (static_cast<int>(b.size()) != sys.dim - 1)
    throw InputError("boundary_rows: b dimension mismatch");
  std::vector<Complex> bc(b.begin(), b.end());
  Matrix rows = Matrix::Zero(mops * N, twom * N);
  for (int j = 0; j < mops; ++j) {
    const BoundaryOp& op = sys.boundary[j];
    if (op.order >= twom)
      throw InputError("boundary_rows: boundary order must be < interior order");
    for (const auto& [be, c] : op.coeffs) {
      if (mi_order(be) != op.order) continue;  // principal part only
      MultiIndex bprime(be.begin() + 1, be.end());
      rows.block(j * N, be[0] * N, N, N) += c * mi_power(bc, bprime);
    }
  }
  return rows;
}

}  // namespace hslab
