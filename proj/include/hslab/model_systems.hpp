#pragma once

#include "hslab/bv_system.hpp"

namespace hslab {

// Canonical scalar model systems used throughout the tests and the bundled
// configurations. All follow D = -i d/dx, so -Laplace = sum_i D_i^2.

inline MultiIndex unit_mi(int dim, int axis, int k) {
  MultiIndex a(dim, 0);
  a[axis] = k;
  return a;
}

inline Matrix scalar_coeff(Complex c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  return m;
}

inline BoundaryOp dirichlet_op(int dim) {
  BoundaryOp op;
  op.order = 0;
  op.coeffs[MultiIndex(dim, 0)] = scalar_coeff(1.0);
  return op;
}

inline BoundaryOp neumann_op(int dim) {
  BoundaryOp op;
  op.order = 1;
  op.coeffs[unit_mi(dim, 0, 1)] = scalar_coeff(1.0);
  return op;
}

// B = D_1 + i D_2 (Cauchy-Riemann type); fails Lopatinskii-Shapiro on the
// Laplacian at lambda = 0 for xi_2 < 0.
inline BoundaryOp cauchy_riemann_op(int dim) {
  BoundaryOp op;
  op.order = 1;
  op.coeffs[unit_mi(dim, 0, 1)] = scalar_coeff(1.0);
  op.coeffs[unit_mi(dim, 1, 1)] = scalar_coeff(Complex(0.0, 1.0));
  return op;
}

// -Laplace with one boundary operator.
inline BVSystem laplacian_system(int dim, BoundaryOp op) {
  BVSystem sys;
  sys.dim = dim;
  sys.state_dim = 1;
  sys.order = 2;
  for (int i = 0; i < dim; ++i) sys.interior[unit_mi(dim, i, 2)] = scalar_coeff(1.0);
  sys.boundary.push_back(std::move(op));
  return sys;
}

inline BVSystem dirichlet_laplacian(int dim) { return laplacian_system(dim, dirichlet_op(dim)); }
inline BVSystem neumann_laplacian(int dim) { return laplacian_system(dim, neumann_op(dim)); }

// c * (-Laplace), complex scalar c; rotates the symbol range by arg(c).
inline BVSystem rotated_laplacian(int dim, Complex c) {
  BVSystem sys = dirichlet_laplacian(dim);
  for (auto& [a, m] : sys.interior) m *= c;
  return sys;
}

// Laplace^2 = (sum_i D_i^2)^2 with clamped conditions (Dirichlet + Neumann).
inline BVSystem clamped_bilaplacian(int dim) {
  BVSystem sys;
  sys.dim = dim;
  sys.state_dim = 1;
  sys.order = 4;
  // Expand (sum_i D_i^2)^2 = sum_{i,j} D_i^2 D_j^2.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      MultiIndex a(dim, 0);
      a[i] += 2;
      a[j] += 2;
      auto it = sys.interior.find(a);
      if (it == sys.interior.end())
        sys.interior[a] = scalar_coeff(1.0);
      else
        it->second += scalar_coeff(1.0);
    }
  sys.boundary.push_back(dirichlet_op(dim));
  sys.boundary.push_back(neumann_op(dim));
  return sys;
}

// D_1^2 - D_2^2 (wave operator); not parameter-elliptic.
inline BVSystem wave_system(int dim) {
  BVSystem sys;
  sys.dim = dim;
  sys.state_dim = 1;
  sys.order = 2;
  sys.interior[unit_mi(dim, 0, 2)] = scalar_coeff(1.0);
  sys.interior[unit_mi(dim, 1, 2)] = scalar_coeff(-1.0);
  sys.boundary.push_back(dirichlet_op(dim));
  return sys;
}

// diag(-Laplace, -c2 Laplace, ...) with Dirichlet conditions on each component.
inline BVSystem diagonal_laplacians(int dim, const std::vector<double>& scales) {
  BVSystem sys;
  sys.dim = dim;
  sys.state_dim = static_cast<int>(scales.size());
  sys.order = 2;
  int N = sys.state_dim;
  for (int i = 0; i < dim; ++i) {
    Matrix c = Matrix::Zero(N, N);
    for (int k = 0; k < N; ++k) c(k, k) = scales[k];
    sys.interior[unit_mi(dim, i, 2)] = c;
  }
  BoundaryOp op;
  op.order = 0;
  op.coeffs[MultiIndex(dim, 0)] = Matrix::Identity(N, N);
  sys.boundary.push_back(op);
  return sys;
}

}  // namespace hslab
