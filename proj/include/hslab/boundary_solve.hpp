#pragma once

#include <Eigen/Dense>

#include "hslab/first_order.hpp"
#include "hslab/stable_projection.hpp"

namespace hslab {

// Boundary-to-state map for the reduced half-line problem: M is the unique
// 2mN x mN matrix with Rows * M = I whose columns lie in the decaying
// subspace, i.e. M = Q (Rows Q)^{-1}. Column block j, applied to
// g_j / rho^{m_j}, is the initial state of the decaying solution matching
// boundary data e_j g_j.
struct BoundarySolve {
  Matrix M;          // 2mN x mN
  Matrix C;          // mN x mN, (Rows Q)^{-1}
  double ls_value;   // smallest singular value of Rows Q
};

inline BoundarySolve stable_boundary_solve(const BVSystem& sys, const FirstOrderReduction& red,
                                           const StableDecomposition& sd,
                                           double ls_tol = 1e-10) {
  Matrix rows = boundary_rows(sys, red.rv.b);
  Matrix RQ = rows * sd.Q;
  Eigen::JacobiSVD<Matrix> svd(RQ, Eigen::ComputeThinU | Eigen::ComputeThinV);
  BoundarySolve out;
  out.ls_value = svd.singularValues().minCoeff();
  if (out.ls_value < ls_tol)
    throw GuardError(Guard::LopatinskiiSingular,
                     "Rows*Q has smallest singular value " + std::to_string(out.ls_value));
  out.C = svd.solve(Matrix::Identity(RQ.rows(), RQ.cols()));
  out.M = sd.Q * out.C;
  return out;
}

}  // namespace hslab
