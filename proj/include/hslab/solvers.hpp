#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "hslab/bv_system.hpp"
#include "hslab/fd.hpp"
#include "hslab/fft.hpp"
#include "hslab/field.hpp"
#include "hslab/kernel.hpp"
#include "hslab/lp.hpp"
#include "hslab/seeley.hpp"

namespace hslab {

// A computed solution together with its a-posteriori defect. For parabolic
// runs lambda carries the real shift eta and the time axis is the last axis
// of the solution field.
struct SolveReport {
  DiscreteField solution;
  Complex lambda{0.0, 0.0};
  bool parabolic = false;
  double interior_residual = 0.0;
  std::vector<double> boundary_residuals;
};

namespace detail {

inline void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::mutex mu;
  std::exception_ptr err;
  const int nt = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      while (true) {
        long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// FFT of every periodic axis, all components at once (the component index is
// just one more outer dimension). A non-periodic axis is legal only at slot 0.
inline void fft_periodic_axes(DiscreteField& f, bool inverse) {
  std::vector<int> shape;
  shape.push_back(f.components);
  for (const Axis& a : f.axes) shape.push_back(a.count);
  for (size_t a = 0; a < f.axes.size(); ++a) {
    if (!f.axes[a].periodic()) continue;
    fft_axis(f.values, shape, static_cast<int>(a) + 1, inverse);
  }
}

inline std::string format_point(const std::vector<double>& xi, Complex lambda) {
  std::ostringstream os;
  os << "xi = (";
  for (size_t i = 0; i < xi.size(); ++i) os << (i ? ", " : "") << xi[i];
  os << "), lambda = " << lambda.real() << (lambda.imag() < 0 ? " - " : " + ")
     << std::abs(lambda.imag()) << "i";
  return os.str();
}

}  // namespace detail

// u = (1 + lambda + A(D))^{-1} f on a fully periodic grid: exact in Fourier
// space, one N x N solve per lattice frequency.
inline DiscreteField wholespace_resolvent(const BVSystem& sys, Complex lambda,
                                          const DiscreteField& f) {
  sys.validate();
  f.validate();
  if (f.components != sys.state_dim) throw InputError("resolvent: component count mismatch");
  if (static_cast<int>(f.axes.size()) != sys.dim)
    throw InputError("resolvent: grid dimension mismatch");
  for (const Axis& a : f.axes)
    if (!a.periodic())
      throw InputError("resolvent: all axes must be periodic (extend the field first)");

  DiscreteField u = f;
  detail::fft_periodic_axes(u, false);
  const long total = f.axis_total();
  const int N = sys.state_dim;
  const Matrix id = Matrix::Identity(N, N);
  std::vector<Complex> xi(sys.dim);
  for_each_index(f.shape(), [&](const std::vector<int>& idx) {
    std::vector<double> xr = lattice_freq(f, idx);
    for (int a = 0; a < sys.dim; ++a) xi[a] = Complex(xr[a], 0.0);
    Matrix M = full_symbol(sys, xi) + (1.0 + lambda) * id;
    Eigen::PartialPivLU<Matrix> lu(M);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int i = 0; i < N; ++i) {
      double d = std::abs(lu.matrixLU()(i, i));
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    if (!(dmin > 1e-14 * std::max(dmax, 1.0)))
      throw GuardError(Guard::ResolventSingular,
                       "resolvent: 1 + lambda + A(xi) is singular at " +
                           detail::format_point(xr, lambda));
    const long off = f.flat_index(idx);
    Vector rhs(N);
    for (int c = 0; c < N; ++c) rhs(c) = u.values[c * total + off];
    Vector sol = lu.solve(rhs);
    for (int c = 0; c < N; ++c) u.values[c * total + off] = sol(c);
  });
  detail::fft_periodic_axes(u, true);
  return u;
}

namespace detail {

// Superpose the Poisson kernels over the boundary lattice: ghat holds the
// already-transformed boundary data, split() maps a lattice frequency vector
// to the kernel's (xi', lambda). Writes per lattice point are disjoint, so the
// frequency loop parallelizes without any reduction.
inline DiscreteField kernel_superpose(
    const BVSystem& sys, const std::vector<DiscreteField>& ghat, const Axis& normal,
    const std::function<void(const std::vector<double>&, std::vector<double>&, Complex&)>& split,
    const KernelOptions& opt, int threads) {
  const int m = sys.half_order();
  const int N = sys.state_dim;
  const std::vector<int> bshape = ghat[0].shape();
  const long btotal = ghat[0].axis_total();
  const int n1 = normal.count;

  Grid axes;
  axes.push_back(normal);
  for (const Axis& a : ghat[0].axes) axes.push_back(a);
  Anisotropy aniso = ghat[0].aniso;
  aniso.dims.insert(aniso.dims.begin(), 1);
  aniso.weights.insert(aniso.weights.begin(), 1.0);
  DiscreteField u = DiscreteField::zeros(axes, N, aniso);

  std::vector<double> x1(n1);
  for (int i = 0; i < n1; ++i) x1[i] = normal.coord(i);
  const long utotal = u.axis_total();

  parallel_for(btotal, threads, [&](long t) {
    std::vector<int> idx(bshape.size());
    long rem = t;
    for (int a = static_cast<int>(bshape.size()) - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % bshape[a]);
      rem /= bshape[a];
    }
    std::vector<double> freqs(bshape.size());
    for (size_t a = 0; a < bshape.size(); ++a) freqs[a] = ghat[0].axes[a].freq(idx[a]);
    FrequencyPoint fp;
    split(freqs, fp.xi_prime, fp.lambda);
    PoissonKernel kern = build_poisson_kernel(sys, fp, opt);
    Vector gvec(N), acc(N);
    for (int i1 = 0; i1 < n1; ++i1) {
      acc.setZero();
      for (int j = 0; j < m; ++j) {
        for (int c = 0; c < N; ++c) gvec(c) = ghat[j].values[c * btotal + t];
        acc += kern.eval(j, x1[i1]) * gvec;
      }
      for (int c = 0; c < N; ++c) u.values[c * utotal + static_cast<long>(i1) * btotal + t] = acc(c);
    }
  });
  fft_periodic_axes(u, true);
  return u;
}

inline void check_boundary_data(const BVSystem& sys, const std::vector<DiscreteField>& g,
                                int expected_axes) {
  if (static_cast<int>(g.size()) != sys.half_order())
    throw InputError("solve: expected one boundary field per boundary operator");
  for (const DiscreteField& gj : g) {
    gj.validate();
    if (gj.components != sys.state_dim) throw InputError("solve: boundary component mismatch");
    if (static_cast<int>(gj.axes.size()) != expected_axes)
      throw InputError("solve: boundary grid dimension mismatch");
    for (size_t a = 0; a < gj.axes.size(); ++a) {
      if (!gj.axes[a].periodic()) throw InputError("solve: boundary axes must be periodic");
      if (gj.axes[a].count != g[0].axes[a].count)
        throw InputError("solve: boundary fields must share one grid");
    }
  }
}

}  // namespace detail

struct ResidualReport {
  double interior = 0.0;
  std::vector<double> boundary;
};

// Defect of a candidate solution. Interior: the relative size of
// d_t u (time axis present) + (1 + lambda + A(D)) u - f, with tangential and
// time derivatives spectral and normal derivatives from sliding 4th-order
// finite-difference stencils (graded grids included). Boundary: relative size
// of B_j u|_{x1=0} - g_j, absolute when g_j = 0.
inline ResidualReport residual(const BVSystem& sys, Complex lambda, const DiscreteField& u,
                               const DiscreteField* f, const std::vector<DiscreteField>& g) {
  sys.validate();
  u.validate();
  if (u.components != sys.state_dim) throw InputError("residual: component count mismatch");
  if (u.axes.empty() || u.axes[0].role != AxisRole::Normal || u.axes[0].periodic())
    throw InputError("residual: axis 0 must be a half-space normal axis");
  const int naxes = static_cast<int>(u.axes.size());
  bool timed = false;
  for (int a = 0; a < naxes; ++a)
    if (u.axes[a].role == AxisRole::Time) {
      if (a != naxes - 1) throw InputError("residual: a time axis must be the last axis");
      timed = true;
    }
  const int nspace = naxes - (timed ? 1 : 0);
  if (nspace != sys.dim) throw InputError("residual: spatial dimension mismatch");

  const int N = sys.state_dim;
  const int n1 = u.axes[0].count;
  long btotal = 1;
  for (int a = 1; a < naxes; ++a) btotal *= u.axes[a].count;
  const long total = u.axis_total();

  DiscreteField U = u;
  detail::fft_periodic_axes(U, false);
  DiscreteField F;
  if (f) {
    f->validate();
    if (f->shape() != u.shape() || f->components != N)
      throw InputError("residual: interior data grid mismatch");
    F = *f;
    detail::fft_periodic_axes(F, false);
  }

  std::vector<double> nodes(n1);
  for (int i = 0; i < n1; ++i) nodes[i] = u.axes[0].coord(i);

  // Per-lattice frequency decode for the periodic axes.
  std::vector<int> bshape(naxes - 1);
  for (int a = 1; a < naxes; ++a) bshape[a - 1] = u.axes[a].count;
  auto lattice_freqs = [&](long t, std::vector<double>& fr) {
    long rem = t;
    for (int a = naxes - 2; a >= 0; --a) {
      fr[a] = u.axes[a + 1].freq(static_cast<int>(rem % bshape[a]));
      rem /= bshape[a];
    }
  };

  // R = (1 + lambda) U (+ i tau U) + sum_alpha a_alpha D^alpha U - F, in the
  // mixed representation (physical x1, Fourier elsewhere).
  std::vector<std::vector<Complex>> R(N);
  {
    std::vector<double> fr(naxes - 1);
    for (int c = 0; c < N; ++c) {
      R[c].resize(n1 * btotal);
      for (long i = 0; i < n1 * btotal; ++i) {
        Complex v = (1.0 + lambda) * U.values[c * total + i];
        if (timed) {
          lattice_freqs(i % btotal, fr);
          v += Complex(0.0, fr[naxes - 2]) * U.values[c * total + i];
        }
        if (f) v -= F.values[c * total + i];
        R[c][i] = v;
      }
    }
  }

  std::vector<Complex> work(n1 * btotal), dwork(n1 * btotal);
  std::vector<double> fr(naxes - 1);
  for (const auto& [alpha, ca] : sys.interior) {
    const int a1 = alpha[0];
    Complex nf(1.0, 0.0);  // (-i)^{a1}
    for (int i = 0; i < a1; ++i) nf *= Complex(0.0, -1.0);
    for (int cp = 0; cp < N; ++cp) {
      bool needed = false;
      for (int c = 0; c < N; ++c)
        if (std::abs(ca(c, cp)) > 0.0) needed = true;
      if (!needed) continue;
      for (long t = 0; t < btotal; ++t) {
        lattice_freqs(t, fr);
        double sym = 1.0;
        for (int a = 1; a < sys.dim; ++a)
          for (int p = 0; p < alpha[a]; ++p) sym *= fr[a - 1];
        for (int i1 = 0; i1 < n1; ++i1)
          work[static_cast<long>(i1) * btotal + t] =
              sym * U.values[cp * total + static_cast<long>(i1) * btotal + t];
      }
      const Complex* src = work.data();
      if (a1 > 0) {
        for (long t = 0; t < btotal; ++t)
          detail::fd_derivative_line(nodes, work.data() + t, btotal, a1,
                                     std::min(a1 + 4, n1), dwork.data() + t);
        src = dwork.data();
      }
      for (int c = 0; c < N; ++c) {
        const Complex w = nf * ca(c, cp);
        if (std::abs(w) == 0.0) continue;
        for (long i = 0; i < n1 * btotal; ++i) R[c][i] += w * src[i];
      }
    }
  }

  // Physical L2 norms: trapezoid in x1, Parseval across the periodic axes.
  std::vector<double> w1(n1, 0.0);
  for (int i = 0; i + 1 < n1; ++i) {
    const double h = nodes[i + 1] - nodes[i];
    w1[i] += 0.5 * h;
    w1[i + 1] += 0.5 * h;
  }
  double cfac = 1.0;
  for (int a = 1; a < naxes; ++a) cfac *= u.axes[a].extent / u.axes[a].count / u.axes[a].count;
  double rn = 0.0, un = 0.0;
  for (int c = 0; c < N; ++c)
    for (int i1 = 0; i1 < n1; ++i1)
      for (long t = 0; t < btotal; ++t) {
        rn += w1[i1] * cfac * std::norm(R[c][static_cast<long>(i1) * btotal + t]);
        un += w1[i1] * cfac * std::norm(U.values[c * total + static_cast<long>(i1) * btotal + t]);
      }
  ResidualReport rep;
  rep.interior = (un > 0.0) ? std::sqrt(rn / un) : std::sqrt(rn);

  if (g.empty()) return rep;
  if (static_cast<int>(g.size()) != static_cast<int>(sys.boundary.size()))
    throw InputError("residual: expected one boundary field per boundary operator");
  for (size_t j = 0; j < g.size(); ++j) {
    g[j].validate();
    if (g[j].components != N || g[j].axis_total() != btotal)
      throw InputError("residual: boundary grid mismatch");
    DiscreteField G = g[j];
    detail::fft_periodic_axes(G, false);
    std::vector<std::vector<Complex>> T(N, std::vector<Complex>(btotal, Complex(0.0, 0.0)));
    for (const auto& [beta, cb] : sys.boundary[j].coeffs) {
      const int b1 = beta[0];
      Complex nf(1.0, 0.0);
      for (int i = 0; i < b1; ++i) nf *= Complex(0.0, -1.0);
      const int width = std::min(b1 + 4, n1);
      std::vector<double> local(nodes.begin(), nodes.begin() + width);
      std::vector<double> fw = detail::fd_weights(nodes[0], local, b1);
      for (int cp = 0; cp < N; ++cp) {
        for (long t = 0; t < btotal; ++t) {
          lattice_freqs(t, fr);
          double sym = 1.0;
          for (int a = 1; a < sys.dim; ++a)
            for (int p = 0; p < beta[a]; ++p) sym *= fr[a - 1];
          Complex d(0.0, 0.0);
          for (int k = 0; k < width; ++k)
            d += fw[k] * U.values[cp * total + static_cast<long>(k) * btotal + t];
          for (int c = 0; c < N; ++c) T[c][t] += nf * cb(c, cp) * sym * d;
        }
      }
    }
    double dn = 0.0, gn = 0.0;
    for (int c = 0; c < N; ++c)
      for (long t = 0; t < btotal; ++t) {
        dn += cfac * std::norm(T[c][t] - G.values[c * btotal + t]);
        gn += cfac * std::norm(G.values[c * btotal + t]);
      }
    rep.boundary.push_back(gn > 0.0 ? std::sqrt(dn / gn) : std::sqrt(dn));
  }
  return rep;
}

// Solve (1 + lambda) u + A(D) u = 0, B_j u|_{x1=0} = g_j by superposing the
// Poisson kernels per tangential frequency; exact in xi', continuous in x1.
inline SolveReport halfspace_bvp_solve(const BVSystem& sys, Complex lambda,
                                       const std::vector<DiscreteField>& g, const Axis& normal,
                                       const KernelOptions& opt = {}, int threads = 1) {
  sys.validate_half_space();
  normal.validate();
  if (normal.role != AxisRole::Normal || normal.periodic())
    throw InputError("solve: need a half-space normal axis");
  detail::check_boundary_data(sys, g, sys.dim - 1);
  for (const DiscreteField& gj : g)
    for (const Axis& a : gj.axes)
      if (a.role == AxisRole::Time) throw InputError("solve: unexpected time axis");

  std::vector<DiscreteField> ghat = g;
  for (DiscreteField& gh : ghat) detail::fft_periodic_axes(gh, false);
  SolveReport rep;
  rep.lambda = lambda;
  rep.solution = detail::kernel_superpose(
      sys, ghat, normal,
      [lambda](const std::vector<double>& freqs, std::vector<double>& xi, Complex& lam) {
        xi = freqs;
        lam = lambda;
      },
      opt, threads);
  ResidualReport rr = residual(sys, lambda, rep.solution, nullptr, g);
  rep.interior_residual = rr.interior;
  rep.boundary_residuals = rr.boundary;
  return rep;
}

// Parabolic boundary value problem on the half-space x time torus:
// d_t u + (1 + eta) u + A(D) u = 0, B_j u = g_j. FFT in (x', t) and apply the
// elliptic kernel at lambda = eta + i tau per lattice frequency.
inline SolveReport parabolic_solve(const BVSystem& sys, double eta,
                                   const std::vector<DiscreteField>& g, const Axis& normal,
                                   const KernelOptions& opt = {}, int threads = 1) {
  sys.validate_half_space();
  normal.validate();
  if (normal.role != AxisRole::Normal || normal.periodic())
    throw InputError("solve: need a half-space normal axis");
  if (!(eta >= 0.0)) throw InputError("solve: parabolic shift eta must be >= 0");
  detail::check_boundary_data(sys, g, sys.dim);
  for (const DiscreteField& gj : g) {
    for (size_t a = 0; a + 1 < gj.axes.size(); ++a)
      if (gj.axes[a].role == AxisRole::Time)
        throw InputError("solve: the time axis must be the last axis");
    if (gj.axes.back().role != AxisRole::Time)
      throw InputError("solve: parabolic data needs a trailing time axis");
  }

  std::vector<DiscreteField> ghat = g;
  for (DiscreteField& gh : ghat) detail::fft_periodic_axes(gh, false);
  SolveReport rep;
  rep.lambda = Complex(eta, 0.0);
  rep.parabolic = true;
  rep.solution = detail::kernel_superpose(
      sys, ghat, normal,
      [eta](const std::vector<double>& freqs, std::vector<double>& xi, Complex& lam) {
        xi.assign(freqs.begin(), freqs.end() - 1);
        lam = Complex(eta, freqs.back());
      },
      opt, threads);
  ResidualReport rr = residual(sys, rep.lambda, rep.solution, nullptr, g);
  rep.interior_residual = rr.interior;
  rep.boundary_residuals = rr.boundary;
  return rep;
}

// Inhomogeneous problem (1 + lambda) u + A(D) u = f, B_j u = g_j: extend f
// across the boundary, apply the whole-space resolvent, and correct the
// boundary defect with a Poisson solve.
inline SolveReport halfspace_full_solve(const BVSystem& sys, Complex lambda,
                                        const DiscreteField& f,
                                        const std::vector<DiscreteField>& g,
                                        const KernelOptions& opt = {}, int threads = 1,
                                        const SeeleyData& sd = detail::default_seeley()) {
  sys.validate_half_space();
  f.validate();
  if (f.components != sys.state_dim) throw InputError("solve: component count mismatch");
  if (static_cast<int>(f.axes.size()) != sys.dim)
    throw InputError("solve: grid dimension mismatch");
  detail::check_boundary_data(sys, g, sys.dim - 1);
  for (const DiscreteField& gj : g)
    for (size_t a = 0; a < gj.axes.size(); ++a)
      if (gj.axes[a].count != f.axes[a + 1].count)
        throw InputError("solve: boundary grid does not match the interior grid");

  DiscreteField ef = seeley_extend(f, sd);
  DiscreteField vt = wholespace_resolvent(sys, lambda, ef);

  // Boundary defect g_j - B_j(D) v|_{x1=0}, derivatives taken spectrally on
  // the extension torus.
  DiscreteField vhat = vt;
  detail::fft_periodic_axes(vhat, false);
  const int N = sys.state_dim;
  const long ttotal = vt.axis_total();
  std::vector<DiscreteField> defect = g;
  std::vector<Complex> xi(sys.dim);
  for (size_t j = 0; j < g.size(); ++j) {
    DiscreteField wj = DiscreteField::zeros(vt.axes, N, vt.aniso);
    for_each_index(vt.shape(), [&](const std::vector<int>& idx) {
      std::vector<double> xr = lattice_freq(vt, idx);
      for (int a = 0; a < sys.dim; ++a) xi[a] = Complex(xr[a], 0.0);
      Matrix B = Matrix::Zero(N, N);
      for (const auto& [beta, cb] : sys.boundary[j].coeffs) B += cb * mi_power(xi, beta);
      const long off = vt.flat_index(idx);
      for (int c = 0; c < N; ++c) {
        Complex acc(0.0, 0.0);
        for (int cp = 0; cp < N; ++cp) acc += B(c, cp) * vhat.values[cp * ttotal + off];
        wj.values[c * ttotal + off] = acc;
      }
    });
    detail::fft_periodic_axes(wj, true);
    DiscreteField wr = restrict_normal(wj, f.axes[0]);
    // x1 = 0 is slab 0 of the restricted field.
    const long btotal = defect[j].axis_total();
    const long rtotal = wr.axis_total();
    for (int c = 0; c < N; ++c)
      for (long t = 0; t < btotal; ++t)
        defect[j].values[c * btotal + t] -= wr.values[c * rtotal + t];
  }

  SolveReport corr = halfspace_bvp_solve(sys, lambda, defect, f.axes[0], opt, threads);
  DiscreteField v = restrict_normal(vt, f.axes[0]);
  SolveReport rep;
  rep.lambda = lambda;
  rep.solution = v;
  for (size_t i = 0; i < v.values.size(); ++i)
    rep.solution.values[i] += corr.solution.values[i];
  ResidualReport rr = residual(sys, lambda, rep.solution, &f, g);
  rep.interior_residual = rr.interior;
  rep.boundary_residuals = rr.boundary;
  return rep;
}

}  // namespace hslab
