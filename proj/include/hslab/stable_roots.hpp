#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hslab/bv_system.hpp"
#include "hslab/frequency.hpp"

namespace hslab {

// Roots in tau of det(lambda + A_#(xi', tau)) = 0, split by the sign of
// Im(tau). The lambda that is passed is used as-is; callers working with the
// model problem (1+lambda) v + A(D) v = 0 pass 1+lambda themselves.
struct StableRoots {
  std::vector<Complex> stable;    // Im > gap_tol, sorted by ascending arg
  std::vector<Complex> unstable;  // Im < -gap_tol
  double gap = 0.0;               // min |Im tau| over all roots
  double gap_tol = 0.0;
};

namespace detail {

// Parlett-Reinsch style balancing of a dense complex matrix (diagonal
// similarity with powers of 2); improves companion eigenvalue accuracy.
inline void balance_in_place(Matrix& A) {
  const int n = static_cast<int>(A.rows());
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s) {
        converged = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

// Roots of sum_k coeff[k] z^k via a balanced companion matrix.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeff) {
  int deg = static_cast<int>(coeff.size()) - 1;
  while (deg > 0 && std::abs(coeff[deg]) == 0.0) --deg;
  if (deg < 1) return {};
  Matrix C = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeff[i] / coeff[deg];
  balance_in_place(C);
  Eigen::ComplexEigenSolver<Matrix> es(C, false);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

// Coefficients of p(u) = det(lambda + A_#(xi', sc*u)) by evaluation at roots
// of unity and inverse DFT; exact for the polynomial of degree order*N.
inline std::vector<Complex> char_poly_coeffs(const BVSystem& sys,
                                             const std::vector<double>& xi_prime, Complex lambda,
                                             double sc) {
  const int N = sys.state_dim;
  const int D = sys.order * N;
  const int M = D + 1;
  std::vector<Complex> vals(M);
  std::vector<Complex> xi(sys.dim);
  for (int i = 0; i + 1 < sys.dim; ++i) xi[i + 1] = Complex(xi_prime[i], 0.0);
  for (int k = 0; k < M; ++k) {
    Complex u = std::polar(1.0, 2.0 * kPi * k / M);
    xi[0] = sc * u;
    Matrix s = principal_symbol(sys, xi);
    s.diagonal().array() += lambda;
    vals[k] = Eigen::PartialPivLU<Matrix>(s).determinant();
  }
  std::vector<Complex> coeff(M);
  for (int j = 0; j < M; ++j) {
    Complex acc(0.0, 0.0);
    for (int k = 0; k < M; ++k) acc += vals[k] * std::polar(1.0, -2.0 * kPi * j * k / M);
    coeff[j] = acc / static_cast<double>(M);
  }
  return coeff;
}

}  // namespace detail

inline StableRoots stable_roots(const BVSystem& sys, const FrequencyPoint& fp,
                                double gap_tol_factor = 1e-8) {
  sys.validate();
  if (static_cast<int>(fp.xi_prime.size()) != sys.dim - 1)
    throw InputError("stable_roots: xi' dimension mismatch");
  const int N = sys.state_dim;
  const int m = sys.half_order();
  const int D = sys.order * N;

  // Roots scale like the homogeneous joint scale; normalize to keep the
  // companion solve conditioned. The Bessel variant keeps sc >= 1 at the
  // origin.
  double sc = std::pow(joint_bessel(fp, sys.order), 1.0 / sys.order);
  std::vector<Complex> coeff = detail::char_poly_coeffs(sys, fp.xi_prime, fp.lambda, sc);

  double cmax = 0.0;
  for (const auto& c : coeff) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) throw GuardError(Guard::LeadingCoeffSingular, "characteristic polynomial vanishes");
  if (std::abs(coeff[D]) < 1e-12 * cmax)
    throw GuardError(Guard::LeadingCoeffSingular,
                     "leading normal coefficient (near-)singular: |det a_{2m e1}| too small");

  std::vector<Complex> roots = detail::poly_roots(coeff);

  StableRoots out;
  out.gap_tol = gap_tol_factor * (1.0 + joint_bessel(fp, sys.order));
  out.gap = std::numeric_limits<double>::infinity();
  for (Complex u : roots) {
    Complex tau = sc * u;
    out.gap = std::min(out.gap, std::abs(tau.imag()));
    if (std::abs(tau.imag()) <= out.gap_tol)
      throw GuardError(Guard::RealAxisRoot,
                       "characteristic root within gap_tol of the real axis, Im tau = " +
                           std::to_string(tau.imag()));
    if (tau.imag() > 0.0)
      out.stable.push_back(tau);
    else
      out.unstable.push_back(tau);
  }
  if (static_cast<int>(out.stable.size()) != m * N)
    throw GuardError(Guard::WrongStableCount,
                     "expected " + std::to_string(m * N) + " roots with Im > 0, found " +
                         std::to_string(out.stable.size()));
  auto by_arg = [](Complex a, Complex b) { return std::arg(a) < std::arg(b); };
  std::sort(out.stable.begin(), out.stable.end(), by_arg);
  std::sort(out.unstable.begin(), out.unstable.end(), by_arg);
  return out;
}

}  // namespace hslab
