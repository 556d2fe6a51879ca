#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "hslab/common.hpp"

namespace hslab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Invariant-subspace splitting of a first-order coefficient matrix A0 into the
// part with Im(eig) > 0 (modes e^{i rho tau x1} decaying as x1 -> +inf) and the
// rest. Computed from an ordered complex Schur form A0 = U T U^*, stable block
// leading, so Q = U[:, :n_stable] is an orthonormal basis of the stable
// subspace and A0 Q = Q T11.
struct StableDecomposition {
  Matrix Q;                    // dim x n_stable, orthonormal columns
  Matrix T11;                  // n_stable x n_stable, upper triangular
  Matrix P;                    // dim x dim spectral projection onto Ran Q along the unstable subspace
  std::vector<Complex> eigs;   // all eigenvalues, stable ones first
  int n_stable = 0;
  double gap = 0.0;            // min |Im eig| over every eigenvalue
};

namespace detail {

// Unitary similarity swapping adjacent diagonal entries of an upper-triangular
// matrix in place, updating the accumulated U.
inline void schur_swap(Matrix& T, Matrix& U, int k) {
  const Complex a = T(k, k);
  const Complex b = T(k + 1, k + 1);
  const Complex c = T(k, k + 1);
  // Eigenvector of [[a, c], [0, b]] for eigenvalue b is (c, b - a).
  const double nc = std::abs(c);
  const double nd = std::abs(b - a);
  if (nd == 0.0) return;  // equal entries, nothing to do
  const double scale = std::max(nc, nd);
  const Complex v0 = c / scale;
  const Complex v1 = (b - a) / scale;
  const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
  Eigen::Matrix2cd G;
  G << v0 / nv, -std::conj(v1 / nv), v1 / nv, std::conj(v0 / nv);
  T.middleRows(k, 2) = G.adjoint() * T.middleRows(k, 2);
  T.middleCols(k, 2) = T.middleCols(k, 2) * G;
  U.middleCols(k, 2) = U.middleCols(k, 2) * G;
  T(k + 1, k) = Complex(0.0, 0.0);
}

// Solve T11 Y - Y T22 = C with T11, T22 upper triangular (columnwise
// back-substitution). Spectra are disjoint by construction here.
inline Matrix triangular_sylvester(const Matrix& T11, const Matrix& T22, const Matrix& C) {
  const int p = static_cast<int>(T11.rows());
  const int q = static_cast<int>(T22.rows());
  Matrix Y = Matrix::Zero(p, q);
  for (int j = 0; j < q; ++j) {
    Vector rhs = C.col(j);
    for (int i = 0; i < j; ++i) rhs += Y.col(i) * T22(i, j);
    Matrix A = T11 - T22(j, j) * Matrix::Identity(p, p);
    Y.col(j) = A.triangularView<Eigen::Upper>().solve(rhs);
  }
  return Y;
}

}  // namespace detail

// gap_tol guards against eigenvalues too close to the real axis, where the
// splitting degenerates; expected_stable < 0 skips the count check.
inline StableDecomposition stable_projection(const Matrix& A0, double gap_tol,
                                             int expected_stable = -1) {
  const int dim = static_cast<int>(A0.rows());
  Eigen::ComplexSchur<Matrix> schur(A0, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw GuardError(Guard::IllConditioned, "Schur factorization failed");
  Matrix T = schur.matrixT();
  Matrix U = schur.matrixU();

  auto stable = [&](int k) { return T(k, k).imag() > 0.0; };
  // Stable bubble sort by the stability flag: adjacent swaps only, so each
  // move is a well-conditioned 2x2 unitary similarity.
  for (int pass = 0; pass < dim; ++pass) {
    bool moved = false;
    for (int k = 0; k + 1 < dim; ++k) {
      if (!stable(k) && stable(k + 1)) {
        detail::schur_swap(T, U, k);
        moved = true;
      }
    }
    if (!moved) break;
  }

  StableDecomposition sd;
  sd.gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dim; ++k) {
    sd.eigs.push_back(T(k, k));
    sd.gap = std::min(sd.gap, std::abs(T(k, k).imag()));
    if (stable(k)) ++sd.n_stable;
  }
  if (sd.gap <= gap_tol)
    throw GuardError(Guard::SpectralGapTooSmall,
                     "eigenvalue within " + std::to_string(gap_tol) + " of the real axis");
  if (expected_stable >= 0 && sd.n_stable != expected_stable)
    throw GuardError(Guard::WrongStableCount,
                     "expected " + std::to_string(expected_stable) + " decaying modes, found " +
                         std::to_string(sd.n_stable));

  const int p = sd.n_stable;
  sd.Q = U.leftCols(p);
  sd.T11 = T.topLeftCorner(p, p);
  Matrix Y = detail::triangular_sylvester(T.topLeftCorner(p, p), T.bottomRightCorner(dim - p, dim - p),
                                          T.topRightCorner(p, dim - p));
  Matrix W = Matrix::Zero(dim, dim);
  W.topLeftCorner(p, p) = Matrix::Identity(p, p);
  W.topRightCorner(p, dim - p) = Y;
  sd.P = U * W * U.adjoint();
  return sd;
}

}  // namespace hslab
