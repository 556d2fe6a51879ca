#pragma once

#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hslab/kernel.hpp"
#include "hslab/multiindex.hpp"

namespace hslab {

// One weighted derivative of the state kernel: x1^r D_{x1}^k D_{xi'}^{alpha'}
// D_lambda^{gamma} applied to k~_j. Normal derivatives are analytic (powers of
// rho T11 inside the exponential); tangential and spectral ones are central
// finite differences across nearby kernel builds.
struct KernelDerivSpec {
  int j = 0;
  int r = 0;
  int k = 0;
  MultiIndex alpha_prime;  // may be empty, meaning no tangential derivative
  int g_re = 0;
  int g_im = 0;
};

// For each grid point and spec,
//   value = sup_{x1 > 0} x1^r |D k~_j(x1)|_F e^{(c/2) rho x1} / rho^{k - m_j - r - |alpha'| - 2m |gamma|},
// where c is the smallest decay rate of any kernel on the grid (dimensionless,
// measured from the reduced eigenvalues). Uniform parameter-dependence of the
// kernels means these values stay comparable across the whole grid; spread()
// is the max/min ratio probing exactly that.
struct KernelEstimateTable {
  double c = 0.0;
  std::vector<FrequencyPoint> grid;
  std::vector<KernelDerivSpec> specs;
  Eigen::MatrixXd values;  // specs.size() rows x grid.size() cols

  double spread(int si) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int g = 0; g < values.cols(); ++g) {
      lo = std::min(lo, values(si, g));
      hi = std::max(hi, values(si, g));
    }
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
  }
};

struct KernelEstimateOptions {
  int x1_count = 96;
  double fd_scale = 1e-4;
  KernelOptions kernel;
};

namespace detail {

struct Stencil {
  std::vector<std::pair<std::vector<int>, double>> points;  // offset in steps, weight
};

inline Stencil stencil_1d(int var, int nvars, int order, double h) {
  Stencil s;
  auto off = [&](int d) {
    std::vector<int> o(nvars, 0);
    o[var] = d;
    return o;
  };
  if (order == 0) {
    s.points.push_back({off(0), 1.0});
  } else if (order == 1) {
    s.points.push_back({off(1), 0.5 / h});
    s.points.push_back({off(-1), -0.5 / h});
  } else if (order == 2) {
    s.points.push_back({off(1), 1.0 / (h * h)});
    s.points.push_back({off(0), -2.0 / (h * h)});
    s.points.push_back({off(-1), 1.0 / (h * h)});
  } else {
    throw InputError("kernel estimates: finite-difference order per variable is at most 2");
  }
  return s;
}

inline Stencil stencil_compose(const Stencil& a, const Stencil& b) {
  Stencil out;
  for (const auto& [oa, wa] : a.points)
    for (const auto& [ob, wb] : b.points) {
      std::vector<int> o(oa.size());
      for (size_t i = 0; i < o.size(); ++i) o[i] = oa[i] + ob[i];
      out.points.push_back({o, wa * wb});
    }
  return out;
}

}  // namespace detail

inline KernelEstimateTable build_kernel_estimates(const BVSystem& sys,
                                                  const std::vector<FrequencyPoint>& grid,
                                                  const std::vector<KernelDerivSpec>& specs,
                                                  const KernelEstimateOptions& opt = {}) {
  sys.validate_half_space();
  const int nt = sys.dim - 1;       // tangential frequency components
  const int nvars = nt + 2;         // plus Re lambda, Im lambda
  const int m = sys.half_order();
  const int N = sys.state_dim;

  KernelEstimateTable table;
  table.grid = grid;
  table.specs = specs;
  table.values = Eigen::MatrixXd::Zero(static_cast<int>(specs.size()), static_cast<int>(grid.size()));

  // Pass 1: the common decay rate, the smallest Im of any decaying reduced
  // eigenvalue anywhere on the grid.
  table.c = std::numeric_limits<double>::infinity();
  for (const auto& fp : grid) {
    PoissonKernel kern = build_poisson_kernel(sys, fp, opt.kernel);
    for (int i = 0; i < kern.sd.n_stable; ++i)
      table.c = std::min(table.c, kern.sd.eigs[i].imag());
  }

  // Pass 2: per grid point, evaluate every spec, sharing shifted kernel
  // builds between specs through an offset-keyed cache.
  for (size_t g = 0; g < grid.size(); ++g) {
    const FrequencyPoint& fp = grid[g];
    const double rho = rescale_vars(fp, sys.order).rho;
    const double h_xi = opt.fd_scale * rho;
    const double h_la = opt.fd_scale * std::pow(rho, sys.order);

    std::map<std::vector<int>, PoissonKernel> cache;
    auto kernel_at = [&](const std::vector<int>& offset) -> const PoissonKernel& {
      auto it = cache.find(offset);
      if (it != cache.end()) return it->second;
      FrequencyPoint shifted = fp;
      for (int v = 0; v < nt; ++v) shifted.xi_prime[v] += offset[v] * h_xi;
      shifted.lambda += Complex(offset[nt] * h_la, offset[nt + 1] * h_la);
      return cache.emplace(offset, build_poisson_kernel(sys, shifted, opt.kernel)).first->second;
    };

    for (size_t si = 0; si < specs.size(); ++si) {
      const KernelDerivSpec& d = specs[si];
      if (d.j < 0 || d.j >= m) throw InputError("kernel estimates: data slot out of range");
      MultiIndex ap = d.alpha_prime.empty() ? MultiIndex(nt, 0) : d.alpha_prime;
      if (static_cast<int>(ap.size()) != nt)
        throw InputError("kernel estimates: alpha' dimension mismatch");

      detail::Stencil st;
      st.points.push_back({std::vector<int>(nvars, 0), 1.0});
      for (int v = 0; v < nt; ++v)
        st = detail::stencil_compose(st, detail::stencil_1d(v, nvars, ap[v], h_xi));
      st = detail::stencil_compose(st, detail::stencil_1d(nt, nvars, d.g_re, h_la));
      st = detail::stencil_compose(st, detail::stencil_1d(nt + 1, nvars, d.g_im, h_la));

      const double x1_max = (2.0 * d.r + 10.0) / (0.5 * table.c * rho);
      std::vector<Matrix> acc(opt.x1_count, Matrix::Zero(sys.order * N, N));
      std::vector<double> x1s(opt.x1_count);
      for (int i = 0; i < opt.x1_count; ++i) {
        double t = static_cast<double>(i) / (opt.x1_count - 1);
        x1s[i] = x1_max * t * t;
      }
      for (const auto& [offset, weight] : st.points) {
        const PoissonKernel& kern = kernel_at(offset);
        for (int i = 0; i < opt.x1_count; ++i)
          acc[i] += weight * kern.state(d.j, x1s[i], d.k);
      }

      const int mj = sys.boundary[d.j].order;
      const int deg = d.k - mj - d.r - mi_order(ap) - sys.order * (d.g_re + d.g_im);
      double sup = 0.0;
      for (int i = 0; i < opt.x1_count; ++i) {
        double w = std::pow(x1s[i], d.r) * acc[i].norm() * std::exp(0.5 * table.c * rho * x1s[i]);
        sup = std::max(sup, w);
      }
      table.values(static_cast<int>(si), static_cast<int>(g)) = sup / std::pow(rho, deg);
    }
  }
  return table;
}

}  // namespace hslab
