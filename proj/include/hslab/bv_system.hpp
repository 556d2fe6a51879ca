#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "hslab/common.hpp"
#include "hslab/multiindex.hpp"

namespace hslab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// One boundary operator B_j = sum_{|beta| <= order} coeffs[beta] D^beta,
// with D = -i d/dx, acting on C^{state_dim}-valued functions. Axis 0 is the
// normal direction, so beta = (beta_1, beta') with beta_1 the normal order.
struct BoundaryOp {
  int order = 0;  // m_j
  std::map<MultiIndex, Matrix> coeffs;
};

// Constant-coefficient boundary value system on the half-space R^n_+:
//   A(D) = sum_{|alpha| <= order} interior[alpha] D^alpha   (N x N),
//   B_j(D), j = 1..order/2, of orders m_j <= order-1.
// Symbols follow F f(xi) = int e^{-i x.xi} f(x) dx, so D^alpha has symbol
// xi^alpha.
struct BVSystem {
  int dim = 0;        // n
  int state_dim = 1;  // N
  int order = 2;      // 2m
  std::map<MultiIndex, Matrix> interior;
  std::vector<BoundaryOp> boundary;

  int half_order() const { return order / 2; }

  void validate() const {
    if (dim < 1 || dim > 8) throw InputError("system: dim out of range");
    if (state_dim < 1) throw InputError("system: state_dim must be >= 1");
    if (order < 2 || order % 2 != 0) throw InputError("system: order must be even and >= 2");
    if (interior.empty()) throw InputError("system: no interior coefficients");
    for (const auto& [a, c] : interior) {
      if (static_cast<int>(a.size()) != dim)
        throw InputError("system: interior multi-index dim mismatch at " + mi_format(a));
      if (mi_order(a) > order)
        throw InputError("system: interior coefficient above order at " + mi_format(a));
      if (c.rows() != state_dim || c.cols() != state_dim)
        throw InputError("system: interior coefficient shape mismatch at " + mi_format(a));
    }
    bool top = false;
    for (const auto& [a, c] : interior)
      if (mi_order(a) == order && c.cwiseAbs().maxCoeff() > 0.0) top = true;
    if (!top) throw InputError("system: no top-order interior coefficient");
    for (const auto& b : boundary) {
      if (b.order < 0 || b.order > order - 1)
        throw InputError("system: boundary order must be in [0, order-1]");
      if (b.coeffs.empty()) throw InputError("system: boundary operator has no coefficients");
      for (const auto& [a, c] : b.coeffs) {
        if (static_cast<int>(a.size()) != dim)
          throw InputError("system: boundary multi-index dim mismatch at " + mi_format(a));
        if (mi_order(a) > b.order)
          throw InputError("system: boundary coefficient above its order at " + mi_format(a));
        if (c.rows() != state_dim || c.cols() != state_dim)
          throw InputError("system: boundary coefficient shape mismatch at " + mi_format(a));
      }
    }
  }

  void validate_half_space() const {
    validate();
    if (static_cast<int>(boundary.size()) != half_order() * 1)
      throw InputError("system: expected order/2 boundary operators, got " +
                       std::to_string(boundary.size()));
  }
};

// Principal symbol A_#(xi) = sum_{|alpha| = order} a_alpha xi^alpha.
inline Matrix principal_symbol(const BVSystem& sys, const std::vector<Complex>& xi) {
  if (static_cast<int>(xi.size()) != sys.dim)
    throw InputError("principal_symbol: xi dimension mismatch");
  Matrix s = Matrix::Zero(sys.state_dim, sys.state_dim);
  for (const auto& [a, c] : sys.interior)
    if (mi_order(a) == sys.order) s += c * mi_power(xi, a);
  return s;
}

// Full (lower-order terms included) symbol A(xi).
inline Matrix full_symbol(const BVSystem& sys, const std::vector<Complex>& xi) {
  if (static_cast<int>(xi.size()) != sys.dim)
    throw InputError("full_symbol: xi dimension mismatch");
  Matrix s = Matrix::Zero(sys.state_dim, sys.state_dim);
  for (const auto& [a, c] : sys.interior) s += c * mi_power(xi, a);
  return s;
}

// Principal boundary symbol B_{j,#}(xi', tau) = sum_{|beta| = m_j}
// b_beta (xi')^{beta'} tau^{beta_1}, tau standing in for the normal covariable.
inline Matrix boundary_principal_symbol(const BVSystem& sys, int j,
                                        const std::vector<Complex>& xi_prime, Complex tau) {
  if (j < 0 || j >= static_cast<int>(sys.boundary.size()))
    throw InputError("boundary_principal_symbol: operator index out of range");
  if (static_cast<int>(xi_prime.size()) != sys.dim - 1)
    throw InputError("boundary_principal_symbol: xi' dimension mismatch");
  const BoundaryOp& op = sys.boundary[j];
  std::vector<Complex> xi(sys.dim);
  xi[0] = tau;
  for (int i = 0; i + 1 < sys.dim; ++i) xi[i + 1] = xi_prime[i];
  Matrix s = Matrix::Zero(sys.state_dim, sys.state_dim);
  for (const auto& [b, c] : op.coeffs)
    if (mi_order(b) == op.order) s += c * mi_power(xi, b);
  return s;
}

}  // namespace hslab
