#pragma once

#include <cmath>
#include <vector>

#include "hslab/bv_system.hpp"

namespace hslab {

// Outcome of the parameter-ellipticity scan: the principal symbol's spectrum
// over the unit sphere must avoid (-inf, 0]. `angle` is the measured maximal
// |arg| over all sampled eigenvalues, so the spectrum lies in the closed
// sector of half-angle `angle` and the condition (E)_phi holds for any
// phi > angle.
struct EllipticityResult {
  bool elliptic = false;
  double angle = 0.0;
  std::vector<double> worst_xi;
  int grid_size = 0;
  std::string reason;
};

namespace detail {

inline void sphere_points(int n, int per_dim, std::vector<std::vector<double>>& pts) {
  pts.clear();
  if (n == 1) {
    pts.push_back({1.0});
    pts.push_back({-1.0});
  } else if (n == 2) {
    for (int k = 0; k < per_dim; ++k) {
      double t = 2.0 * kPi * k / per_dim;
      pts.push_back({std::cos(t), std::sin(t)});
    }
  } else if (n == 3) {
    // Product grid in (azimuth, polar); poles included once via j = 0 / j = per_dim.
    for (int j = 0; j <= per_dim; ++j) {
      double th = kPi * j / per_dim;
      int naz = (j == 0 || j == per_dim) ? 1 : per_dim;
      for (int k = 0; k < naz; ++k) {
        double ph = 2.0 * kPi * k / per_dim;
        pts.push_back({std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)});
      }
    }
  } else {
    throw InputError("ellipticity_angle: dim > 3 not supported at desk scale");
  }
}

}  // namespace detail

// Scan |xi| = 1 with `sphere_samples` points per angular dimension (>= 16),
// doubling until the measured angle moves by less than `stable_tol`.
inline EllipticityResult ellipticity_angle(const BVSystem& sys, int sphere_samples = 16,
                                           double stable_tol = 1e-3) {
  sys.validate();
  if (sphere_samples < 16) sphere_samples = 16;
  double prev_angle = -1.0;
  EllipticityResult res;
  for (int per_dim = sphere_samples;; per_dim *= 2) {
    std::vector<std::vector<double>> pts;
    detail::sphere_points(sys.dim, per_dim, pts);
    double angle = 0.0;
    std::vector<double> worst;
    for (const auto& x : pts) {
      std::vector<Complex> xi(x.begin(), x.end());
      Matrix s = principal_symbol(sys, xi);
      Eigen::ComplexEigenSolver<Matrix> es(s, false);
      for (int i = 0; i < s.rows(); ++i) {
        Complex ev = es.eigenvalues()(i);
        double mag = std::abs(ev);
        if (mag < 1e-12) {
          res.elliptic = false;
          res.grid_size = static_cast<int>(pts.size());
          res.worst_xi = x;
          res.reason = "zero eigenvalue of the principal symbol at |xi| = 1";
          return res;
        }
        double a = std::abs(std::arg(ev));
        if (a >= kPi - 1e-12) {
          res.elliptic = false;
          res.grid_size = static_cast<int>(pts.size());
          res.worst_xi = x;
          res.reason = "principal symbol eigenvalue on the negative real axis";
          return res;
        }
        if (a > angle) {
          angle = a;
          worst = x;
        }
      }
    }
    res.elliptic = true;
    res.angle = angle;
    res.worst_xi = worst;
    res.grid_size = static_cast<int>(pts.size());
    if (prev_angle >= 0.0 && std::abs(angle - prev_angle) < stable_tol) break;
    prev_angle = angle;
    if (per_dim > (1 << 14)) break;  // refinement cap
  }
  return res;
}

}  // namespace hslab
