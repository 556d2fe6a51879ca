#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hslab/kernel_estimates.hpp"
#include "hslab/norms.hpp"
#include "hslab/solvers.hpp"
#include "hslab/stable_roots.hpp"
#include "hslab/traceext.hpp"

namespace hslab {

// One measured instance of a claimed two-sided bound.
struct RatioSample {
  std::string params;  // flat JSON object describing the sample
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// Empirical report for one quantitative claim: all ratios must fall inside
// [1/bound, bound]. The bound is configuration, not derived; the claim only
// asserts a finite constant exists. Samples are reproducible from the seed.
struct RatioReport {
  std::string claim;
  std::uint64_t seed = 0;
  double bound = 1.0;
  std::vector<RatioSample> samples;
  int skipped = 0;

  double min_ratio() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) m = std::min(m, s.ratio);
    return m;
  }
  double max_ratio() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.ratio);
    return m;
  }
  double spread() const {
    if (samples.empty()) return std::numeric_limits<double>::infinity();
    double lo = min_ratio();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return max_ratio() / lo;
  }
  bool pass() const {
    if (samples.empty()) return false;
    for (const auto& s : samples)
      if (!std::isfinite(s.ratio) || s.ratio > bound || s.ratio < 1.0 / bound) return false;
    return true;
  }
};

namespace detail {

// Tiny flat-JSON builder for sample parameter strings.
class ParamJson {
 public:
  ParamJson& add(const char* key, double v) {
    sep();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os_ << '"' << key << "\":" << buf;
    return *this;
  }
  ParamJson& add(const char* key, long v) {
    sep();
    os_ << '"' << key << "\":" << v;
    return *this;
  }
  ParamJson& add(const char* key, const std::string& v) {
    sep();
    os_ << '"' << key << "\":\"" << v << '"';
    return *this;
  }
  ParamJson& add(const char* key, Complex z) {
    sep();
    char buf[128];
    std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", z.real(), z.imag());
    os_ << '"' << key << "\":" << buf;
    return *this;
  }
  std::string str() const { return "{" + os_.str() + "}"; }

 private:
  void sep() { os_ << (first_ ? (first_ = false, "") : ","); }
  std::ostringstream os_;
  bool first_ = true;
};

}  // namespace detail

// Random field with spectrum drawn uniformly on one dyadic annulus of the
// anisotropic distance (band 0 is the unit ball), normalized to sup 1.
inline DiscreteField random_band_field(const Grid& axes, int components, const Anisotropy& an,
                                       int band, std::uint64_t seed) {
  DiscreteField f = DiscreteField::zeros(axes, components, an);
  for (const Axis& a : axes)
    if (!a.periodic()) throw InputError("random_band_field: axes must be periodic");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  const double lo = (band == 0) ? -1.0 : std::ldexp(1.0, band - 1);
  const double hi = std::ldexp(1.0, band);
  const long total = f.axis_total();
  for_each_index(f.shape(), [&](const std::vector<int>& idx) {
    double dist = aniso_distance(an, lattice_freq(f, idx));
    if (!(dist > lo && dist <= hi)) return;
    const long off = f.flat_index(idx);
    for (int c = 0; c < components; ++c)
      f.values[c * total + off] = Complex(u01(rng), u01(rng));
  });
  std::vector<int> shape;
  shape.push_back(components);
  for (const Axis& a : axes) shape.push_back(a.count);
  for (size_t a = 0; a < axes.size(); ++a) fft_axis(f.values, shape, static_cast<int>(a) + 1, true);
  double m = 0.0;
  for (const Complex& z : f.values) m = std::max(m, std::abs(z));
  if (m > 0.0)
    for (Complex& z : f.values) z /= m;
  return f;
}

// Half-space sample: a short sum of decaying-envelope x band-limited tensor
// terms, smooth up to the boundary and negligible at the far end of the axis.
inline DiscreteField random_halfspace_field(const Axis& normal, const Grid& taxes, int components,
                                            const Anisotropy& an, int band, std::uint64_t seed) {
  Grid axes;
  axes.push_back(normal);
  for (const Axis& a : taxes) axes.push_back(a);
  DiscreteField f = DiscreteField::zeros(axes, components, an);
  Anisotropy tan = an;
  if (tan.dims[0] > 1)
    --tan.dims[0];
  else {
    tan.dims.erase(tan.dims.begin());
    tan.weights.erase(tan.weights.begin());
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> qd(1.5, 2.2);
  const long total = f.axis_total();
  const int n1 = normal.count;
  const long inner = total / n1;
  for (int r = 0; r < 3; ++r) {
    const int br = std::max(0, band - r);
    // Envelope localized at the matching dyadic scale, so the sample carries
    // normal-direction content on the same annulus as its tangential factor.
    const double q = qd(rng) * 0.75 * std::ldexp(1.0, br);
    const int d = r % 2;
    DiscreteField b = random_band_field(taxes, components, tan, br, seed + 31 * r);
    for (int c = 0; c < components; ++c)
      for (int i = 0; i < n1; ++i) {
        const double x = normal.coord(i);
        const double env = (d == 0 ? 1.0 : x) * std::exp(-q * x);
        for (long t = 0; t < inner; ++t)
          f.values[c * total + i * inner + t] += env * b.values[c * inner + t];
      }
  }
  double m = 0.0;
  for (const Complex& z : f.values) m = std::max(m, std::abs(z));
  if (m > 0.0)
    for (Complex& z : f.values) z /= m;
  return f;
}

namespace detail {

// Slices of a space-time field at fixed last-axis (time) index.
inline std::vector<DiscreteField> time_slices(const DiscreteField& u) {
  if (u.axes.size() < 2 || u.axes.back().role != AxisRole::Time)
    throw InputError("time_slices: last axis must be a time axis");
  Grid axes(u.axes.begin(), u.axes.end() - 1);
  Anisotropy an = u.aniso;
  if (an.dims.back() > 1)
    --an.dims.back();
  else {
    an.dims.pop_back();
    an.weights.pop_back();
  }
  const int nt = u.axes.back().count;
  const long total = u.axis_total();
  const long outer = total / nt;
  std::vector<DiscreteField> out;
  for (int it = 0; it < nt; ++it) {
    DiscreteField s = DiscreteField::zeros(axes, u.components, an);
    for (int c = 0; c < u.components; ++c)
      for (long o = 0; o < outer; ++o)
        s.values[c * outer + o] = u.values[c * total + o * nt + it];
    out.push_back(std::move(s));
  }
  return out;
}

// d_t along the trailing periodic time axis, spectrally.
inline DiscreteField time_derivative(const DiscreteField& u) {
  if (u.axes.empty() || u.axes.back().role != AxisRole::Time)
    throw InputError("time_derivative: last axis must be a time axis");
  DiscreteField g = u;
  std::vector<int> shape;
  shape.push_back(g.components);
  for (const Axis& a : g.axes) shape.push_back(a.count);
  fft_axis(g.values, shape, static_cast<int>(g.axes.size()), false);
  const Axis& ta = g.axes.back();
  const int nt = ta.count;
  const long total = g.axis_total();
  const long outer = total / nt;
  for (int c = 0; c < g.components; ++c)
    for (long o = 0; o < outer; ++o)
      for (int it = 0; it < nt; ++it)
        g.values[c * total + o * nt + it] *= Complex(0.0, ta.freq(it));
  fft_axis(g.values, shape, static_cast<int>(g.axes.size()), true);
  return g;
}

// l_q of per-slab values against the time quadrature.
inline double lq_time(const std::vector<double>& v, const Axis& ta, double q) {
  const double cell = ta.extent / ta.count;
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  for (double x : v) s += cell * std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

}  // namespace detail

// tr D^beta u at x1 = 0: tangential/time factors spectral, the normal factor
// from one-sided 4th-order stencils. beta ranges over the spatial axes only.
inline DiscreteField boundary_trace_derivative(const DiscreteField& u, const MultiIndex& beta) {
  u.validate();
  if (u.axes.empty() || u.axes[0].role != AxisRole::Normal || u.axes[0].periodic())
    throw InputError("boundary_trace_derivative: axis 0 must be a half-space normal axis");
  const int naxes = static_cast<int>(u.axes.size());
  const bool timed = u.axes.back().role == AxisRole::Time;
  const int nspace = naxes - (timed ? 1 : 0);
  if (static_cast<int>(beta.size()) != nspace)
    throw InputError("boundary_trace_derivative: multi-index dimension mismatch");

  DiscreteField U = u;
  detail::fft_periodic_axes(U, false);
  const int n1 = u.axes[0].count;
  const long total = u.axis_total();
  const long btotal = total / n1;

  Grid baxes(u.axes.begin() + 1, u.axes.end());
  Anisotropy ban = u.aniso;
  if (ban.dims[0] > 1)
    --ban.dims[0];
  else {
    ban.dims.erase(ban.dims.begin());
    ban.weights.erase(ban.weights.begin());
  }
  DiscreteField g = DiscreteField::zeros(baxes, u.components, ban);

  std::vector<double> nodes(n1);
  for (int i = 0; i < n1; ++i) nodes[i] = u.axes[0].coord(i);
  const int b1 = beta[0];
  const int width = std::min(b1 + 4, n1);
  std::vector<double> local(nodes.begin(), nodes.begin() + width);
  std::vector<double> fw = detail::fd_weights(nodes[0], local, b1);
  Complex nf(1.0, 0.0);
  for (int i = 0; i < b1; ++i) nf *= Complex(0.0, -1.0);

  std::vector<int> bshape(naxes - 1);
  for (int a = 1; a < naxes; ++a) bshape[a - 1] = u.axes[a].count;
  for (int c = 0; c < u.components; ++c)
    for (long t = 0; t < btotal; ++t) {
      long rem = t;
      double sym = 1.0;
      for (int a = naxes - 2; a >= 0; --a) {
        const int i = static_cast<int>(rem % bshape[a]);
        rem /= bshape[a];
        if (a + 1 < nspace)
          for (int p = 0; p < beta[a + 1]; ++p) sym *= u.axes[a + 1].freq(i);
      }
      Complex d(0.0, 0.0);
      for (int k = 0; k < width; ++k) d += fw[k] * U.values[c * total + static_cast<long>(k) * btotal + t];
      g.values[c * btotal + t] = nf * sym * d;
    }
  detail::fft_periodic_axes(g, true);
  return g;
}

// Kernel column via the characteristic roots: for scalar systems with simple
// stable roots tau_i of 1 + lambda + A_#(xi', tau) = 0, the solution is a
// plain exponential sum fixed by the m boundary symbols. Shares no linear
// algebra with the Schur/projector construction.
inline std::vector<Complex> kernel_column_by_roots(const BVSystem& sys, const FrequencyPoint& fp,
                                                   int j, const std::vector<double>& x1s) {
  if (sys.state_dim != 1) throw InputError("kernel_column_by_roots: scalar systems only");
  const int m = sys.half_order();
  FrequencyPoint shifted{fp.xi_prime, 1.0 + fp.lambda};
  StableRoots sr = stable_roots(sys, shifted);
  std::vector<Complex> xp(fp.xi_prime.size());
  for (size_t i = 0; i < xp.size(); ++i) xp[i] = Complex(fp.xi_prime[i], 0.0);
  Matrix M(m, m);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i < m; ++i) M(r, i) = boundary_principal_symbol(sys, r, xp, sr.stable[i])(0, 0);
  Vector e = Vector::Zero(m);
  e(j) = 1.0;
  Vector c = M.partialPivLu().solve(e);
  std::vector<Complex> out(x1s.size());
  for (size_t k = 0; k < x1s.size(); ++k) {
    Complex s(0.0, 0.0);
    for (int i = 0; i < m; ++i) s += c(i) * std::exp(Complex(0.0, 1.0) * sr.stable[i] * x1s[k]);
    out[k] = s;
  }
  return out;
}

// Kernel column via direct ODE integration (second-order scalar case):
// integrate the first-order reduction backward from far away with running
// rescaling; the backward flow contracts onto the decaying mode.
inline std::vector<Complex> kernel_column_by_ode(const BVSystem& sys, const FrequencyPoint& fp,
                                                 int j, std::vector<double> x1s,
                                                 std::uint64_t seed = 271828) {
  if (sys.state_dim != 1 || sys.half_order() != 1)
    throw InputError("kernel_column_by_ode: scalar second-order systems only");
  RescaledVars rv = rescale_vars(fp, sys.order);
  FirstOrderReduction red = reduce_first_order(sys, rv);
  Matrix rows = boundary_rows(sys, rv.b);

  std::sort(x1s.begin(), x1s.end());
  const double xmax = x1s.empty() ? 0.0 : x1s.back();
  const double L = xmax + 30.0 / rv.rho;
  const double hbase = 0.02 / rv.rho / std::max(1.0, red.A0.norm());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(-1.0, 1.0);
  Vector v(2);
  v << Complex(u01(rng), u01(rng)), Complex(u01(rng), u01(rng));
  const Matrix A = Complex(0.0, 1.0) * rv.rho * red.A0;

  auto step_down = [&](Vector& w, double h) {
    const Vector k1 = A * w;
    const Vector k2 = A * (w - 0.5 * h * k1);
    const Vector k3 = A * (w - 0.5 * h * k2);
    const Vector k4 = A * (w - h * k3);
    w -= (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  double logfac = 0.0;
  double x = L;
  std::vector<Vector> vals(x1s.size());
  std::vector<double> logs(x1s.size());
  int target = static_cast<int>(x1s.size()) - 1;
  while (true) {
    const double goal = (target >= 0) ? x1s[target] : 0.0;
    if (x <= goal + 1e-15) {
      if (target < 0) break;
      vals[target] = v;
      logs[target] = logfac;
      --target;
      continue;
    }
    const double h = std::min(hbase, x - goal);
    step_down(v, h);
    x -= h;
    const double m = v.cwiseAbs().maxCoeff();
    if (m > 0.0) {
      v /= m;
      logfac += std::log(m);
    }
  }
  // Loop lands on every target on the way down and exits at x = 0.
  const Complex b0 = std::pow(rv.rho, sys.boundary[j].order) * (rows.row(j) * v)(0);
  std::vector<Complex> out(x1s.size());
  for (size_t k = 0; k < x1s.size(); ++k)
    out[k] = vals[k](0) * std::exp(logs[k] - logfac) / b0;
  return out;
}

// ---------------------------------------------------------------------------
// Ratio checks
// ---------------------------------------------------------------------------

struct PardepSpecs {
  double gamma = 0.0;
  double p = 2.0;
  double q = 2.0;
  int datasets = 2;
  int band = 4;             // top tangential band of the random data
  std::uint64_t seed = 1;
  double bound = 50.0;
  double boundary_shift = 0.0;  // +1 = deliberate trace-exponent violation
  bool zero_f = false;          // boundary-data-only runs (sharpest control)
  Axis normal;
  Grid taxes;
  KernelOptions kernel;
  int threads = 1;
};

// Two-sided parameter-dependent solve estimate: for the solution of
// (1 + lambda + A(D)) u = f, B_j u = g_j,
//   |u|_{t+2m} + |lambda|^{(t+2m-s0)/2m} |u|_{s0}
//     vs |f|_t + |lambda|^{(t-s0)/2m} |f|_{s0}
//        + sum_j (|g_j|_{t+2m-m_j-(1+gamma)/p} + |lambda|^{...} |g_j|_{L_p}),
// interior norms F-scale over the weighted half-space, boundary norms B-scale.
inline RatioReport check_pardep_estimate(const BVSystem& sys, const std::vector<Complex>& lambdas,
                                         double t, double s0, const PardepSpecs& sp) {
  sys.validate_half_space();
  const double tp = (1.0 + sp.gamma) / sp.p;
  if (!(s0 > tp - 1.0)) throw InputError("pardep: s0 below the trace window");
  if (!(t >= s0)) throw InputError("pardep: need t >= s0");
  const int m = sys.half_order();
  const int twom = sys.order;
  const int N = sys.state_dim;

  RatioReport rep;
  rep.claim = "pardep-estimate";
  rep.seed = sp.seed;
  rep.bound = sp.bound;

  Grid uaxes;
  uaxes.push_back(sp.normal);
  for (const Axis& a : sp.taxes) uaxes.push_back(a);
  Anisotropy uan = Anisotropy::isotropic(static_cast<int>(uaxes.size()));
  Anisotropy ban = Anisotropy::isotropic(static_cast<int>(sp.taxes.size()));
  LPFamily famI = build_lp_family(uan, uaxes);
  LPFamily famB = build_lp_family(ban, sp.taxes);

  std::vector<double> pI(uaxes.size(), sp.p), pB(sp.taxes.size(), sp.p);
  NormSpec nu{NormKind::TriebelLizorkin, t + twom, pI, sp.q, sp.gamma, uan};
  NormSpec nu0 = nu;
  nu0.s = s0;
  NormSpec nf = nu;
  nf.s = t;
  NormSpec nf0 = nu0;

  for (int d = 0; d < sp.datasets; ++d) {
    DiscreteField f = sp.zero_f
                          ? DiscreteField::zeros(uaxes, N, uan)
                          : random_halfspace_field(sp.normal, sp.taxes, N, uan, sp.band,
                                                   sp.seed + 1000 * d);
    std::vector<DiscreteField> g;
    for (int j = 0; j < m; ++j)
      g.push_back(random_band_field(sp.taxes, N, ban, sp.band, sp.seed + 1000 * d + 7 * (j + 1)));

    double ffull = sp.zero_f ? 0.0 : space_norm(f, nf, famI);
    double fbase = sp.zero_f ? 0.0 : space_norm(f, nf0, famI);
    std::vector<double> gfull, gbase;
    for (int j = 0; j < m; ++j) {
      const double sb = t + twom - sys.boundary[j].order - tp + sp.boundary_shift;
      NormSpec nb{NormKind::Besov, sb, pB, sp.p, 0.0, ban};
      NormSpec nl{NormKind::MixedLp, 0.0, pB, sp.p, 0.0, ban};
      gfull.push_back(space_norm(g[j], nb, famB));
      gbase.push_back(space_norm(g[j], nl, famB));
    }

    for (const Complex& lam : lambdas) {
      SolveReport sol = halfspace_full_solve(sys, lam, f, g, sp.kernel, sp.threads);
      const double la = std::abs(lam);
      double lhs = space_norm(sol.solution, nu, famI) +
                   std::pow(la, (t + twom - s0) / twom) * space_norm(sol.solution, nu0, famI);
      double rhs = ffull + std::pow(la, (t - s0) / twom) * fbase;
      for (int j = 0; j < m; ++j) {
        const double ex = (t + twom - sys.boundary[j].order - tp + sp.boundary_shift) / twom;
        rhs += gfull[j] + std::pow(la, ex) * gbase[j];
      }
      detail::ParamJson pj;
      pj.add("dataset", static_cast<long>(d)).add("lambda", lam).add("t", t).add("s0", s0);
      rep.samples.push_back({pj.str(), lhs, rhs, lhs / rhs});
    }
  }
  return rep;
}

struct EmbeddingSpecs {
  double p = 2.0;
  double q_src = 2.0;
  double q_dst = 2.0;
  int count = 20;
  int band_lo = 0;
  int band_hi = 5;
  std::uint64_t seed = 1;
  double bound = 20.0;
  bool enforce_pre = true;
  Axis normal;
  Grid taxes;
};

// Weighted embedding F^{s}_{p,q}(w_gamma) into F^{st}_{p,qt}(w_gt): requires
// gamma >= gt and s >= st + (gamma - gt)/p; the report collects the
// target-over-source norm ratios over a seeded corpus.
inline RatioReport check_embedding(double s, double gamma, double st, double gt,
                                   const EmbeddingSpecs& sp) {
  if (sp.enforce_pre) {
    if (!(gamma >= gt)) throw InputError("embedding: need gamma >= target gamma");
    if (!(s >= st + (gamma - gt) / sp.p - 1e-12))
      throw InputError("embedding: smoothness below the sharp line");
  }
  RatioReport rep;
  rep.claim = "embedding";
  rep.seed = sp.seed;
  rep.bound = sp.bound;

  Grid axes;
  axes.push_back(sp.normal);
  for (const Axis& a : sp.taxes) axes.push_back(a);
  Anisotropy an = Anisotropy::isotropic(static_cast<int>(axes.size()));
  LPFamily fam = build_lp_family(an, axes);
  std::vector<double> pv(axes.size(), sp.p);
  NormSpec src{NormKind::TriebelLizorkin, s, pv, sp.q_src, gamma, an};
  NormSpec dst{NormKind::TriebelLizorkin, st, pv, sp.q_dst, gt, an};

  for (int i = 0; i < sp.count; ++i) {
    const int band = sp.band_lo + i % (sp.band_hi - sp.band_lo + 1);
    DiscreteField f = random_halfspace_field(sp.normal, sp.taxes, 1, an, band, sp.seed + 17 * i);
    const double ns = space_norm(f, src, fam);
    const double nd = space_norm(f, dst, fam);
    if (ns == 0.0 && nd == 0.0) {
      ++rep.skipped;
      continue;
    }
    detail::ParamJson pj;
    pj.add("i", static_cast<long>(i)).add("band", static_cast<long>(band)).add("s", s).add("st", st);
    rep.samples.push_back({pj.str(), nd, ns, nd / ns});
  }
  return rep;
}

struct TraceSpecs {
  double p = 2.0;
  double q = 2.0;
  double gamma = 0.0;
  int count = 12;
  int band_lo = 0;
  int band_hi = 4;
  std::uint64_t seed = 1;
  double bound = 30.0;
  bool enforce_pre = true;
  double target_shift = 0.0;  // nonzero = deliberate target-exponent violation
  Axis normal;
  Grid taxes;  // tangential axes then a trailing time axis
};

// Trace of D^beta out of the space-time intersection: the boundary norm in
// F^{s+rho-|beta|-(1+gamma)/p} (anisotropic, time weight rho) against
// |u|_{Lq(F^s)} + |d_t u|_{Lq(F^s)} + |u|_{Lq(F^{s+rho})}.
inline RatioReport check_trace_estimate(const MultiIndex& beta, double s, double rho,
                                        const TraceSpecs& sp) {
  const double tp = (1.0 + sp.gamma) / sp.p;
  const double starget = s + rho - mi_order(beta) - tp + sp.target_shift;
  if (sp.enforce_pre) {
    if (!(s < tp)) throw InputError("trace check: need s below the trace line");
    if (!(s + rho - mi_order(beta) - tp > 0.0))
      throw InputError("trace check: order too high for a bounded trace");
  }
  if (sp.taxes.empty() || sp.taxes.back().role != AxisRole::Time)
    throw InputError("trace check: trailing time axis required");

  RatioReport rep;
  rep.claim = "trace-estimate";
  rep.seed = sp.seed;
  rep.bound = sp.bound;

  Grid uaxes;
  uaxes.push_back(sp.normal);
  for (const Axis& a : sp.taxes) uaxes.push_back(a);
  const int nspace = static_cast<int>(uaxes.size()) - 1;
  Anisotropy uan;
  uan.dims = {nspace, 1};
  uan.weights = {1.0, rho};
  Anisotropy san = Anisotropy::isotropic(nspace);  // spatial slices
  Anisotropy ban;                                  // boundary: tangential + time
  ban.dims = {nspace - 1, 1};
  ban.weights = {1.0, rho};
  if (nspace == 1) {
    ban.dims = {1};
    ban.weights = {rho};
  }

  Grid saxes(uaxes.begin(), uaxes.end() - 1);
  LPFamily famS = build_lp_family(san, saxes);
  LPFamily famB = build_lp_family(ban, sp.taxes);
  std::vector<double> pS(saxes.size(), sp.p);
  std::vector<double> pB(sp.taxes.size(), sp.p);
  pB.back() = sp.q;
  NormSpec low{NormKind::TriebelLizorkin, s, pS, std::numeric_limits<double>::infinity(),
               sp.gamma, san};
  NormSpec high = low;
  high.s = s + rho;
  NormSpec btarget{NormKind::TriebelLizorkin, starget, pB, sp.p, 0.0, ban};

  const Axis& ta = sp.taxes.back();
  for (int i = 0; i < sp.count; ++i) {
    const int band = sp.band_lo + i % (sp.band_hi - sp.band_lo + 1);
    DiscreteField u = random_halfspace_field(sp.normal, sp.taxes, 1, uan, band, sp.seed + 23 * i);
    DiscreteField ut = detail::time_derivative(u);

    std::vector<double> nlow, nhigh, nlow_t;
    for (const DiscreteField& sl : detail::time_slices(u)) {
      nlow.push_back(space_norm(sl, low, famS));
      nhigh.push_back(space_norm(sl, high, famS));
    }
    for (const DiscreteField& sl : detail::time_slices(ut)) nlow_t.push_back(space_norm(sl, low, famS));
    const double denom = detail::lq_time(nlow, ta, sp.q) + detail::lq_time(nlow_t, ta, sp.q) +
                         detail::lq_time(nhigh, ta, sp.q);

    DiscreteField tr = boundary_trace_derivative(u, beta);
    const double num = space_norm(tr, btarget, famB);
    if (num == 0.0 && denom == 0.0) {
      ++rep.skipped;
      continue;
    }
    detail::ParamJson pj;
    pj.add("i", static_cast<long>(i)).add("band", static_cast<long>(band))
        .add("beta", mi_format(beta)).add("s_target", starget);
    rep.samples.push_back({pj.str(), num, denom, num / denom});
  }
  return rep;
}

struct IntersectionSpecs {
  double p = 2.0;
  double q = 2.0;
  int count = 12;
  int band_lo = 0;
  int band_hi = 4;
  std::uint64_t seed = 1;
  double bound = 20.0;
  double target_shift = 0.0;  // nonzero = deliberate time-exponent violation
  Grid axes;  // all-periodic: spatial axes then a trailing time axis
};

// Mixed-norm anisotropic space against its intersection representation:
// one-shot F^{s,(1,rho)}_{(p,q),p} vs time-regularity part + L_q(time; F^s_{p,p}).
inline RatioReport check_intersection_rep(double s, double rho, const IntersectionSpecs& sp) {
  if (!(s > 0.0)) throw InputError("intersection check: need s > 0");
  if (sp.axes.empty() || sp.axes.back().role != AxisRole::Time)
    throw InputError("intersection check: trailing time axis required");
  const int nspace = static_cast<int>(sp.axes.size()) - 1;

  RatioReport rep;
  rep.claim = "intersection-rep";
  rep.seed = sp.seed;
  rep.bound = sp.bound;

  Anisotropy an;
  an.dims = {nspace, 1};
  an.weights = {1.0, rho};
  Anisotropy san = Anisotropy::isotropic(nspace);
  LPFamily fam = build_lp_family(an, sp.axes);
  Grid saxes(sp.axes.begin(), sp.axes.end() - 1);
  LPFamily famS = build_lp_family(san, saxes);

  std::vector<double> pmix(sp.axes.size(), sp.p);
  pmix.back() = sp.q;
  NormSpec oneshot{NormKind::TriebelLizorkin, s, pmix, sp.p, 0.0, an};
  std::vector<double> pS(saxes.size(), sp.p);
  NormSpec spat{NormKind::TriebelLizorkin, s, pS, sp.p, 0.0, san};

  const Axis& ta = sp.axes.back();
  const int nt = ta.count;
  // Time-band profile levels sized to the lattice.
  double tmax = 0.0;
  for (int i = 0; i < nt; ++i) tmax = std::max(tmax, std::pow(std::abs(ta.freq(i)), 1.0 / rho));
  int klevels = 1;
  while (std::ldexp(1.0, klevels - 1) < tmax) ++klevels;
  LPFamily famT;
  famT.aniso = an;
  famT.levels = klevels;

  double cellvol = 1.0;
  for (const Axis& a : saxes) cellvol *= a.extent / a.count;

  for (int i = 0; i < sp.count; ++i) {
    const int band = sp.band_lo + i % (sp.band_hi - sp.band_lo + 1);
    DiscreteField u = random_band_field(sp.axes, 1, an, band, sp.seed + 41 * i);
    const double lhs = space_norm(u, oneshot, fam);

    // Time-regularity part: bands in |tau|^{1/rho}, spatial L_p per slab,
    // pointwise l_p over bands, L_q in time.
    std::vector<int> shape;
    shape.push_back(1);
    for (const Axis& a : sp.axes) shape.push_back(a.count);
    DiscreteField uh = u;
    fft_all(uh.values, std::vector<int>(shape.begin() + 1, shape.end()), false);
    const long total = u.axis_total();
    const long outer = total / nt;
    std::vector<std::vector<double>> nk(klevels, std::vector<double>(nt, 0.0));
    std::vector<Complex> piece(total);
    for (int k = 0; k < klevels; ++k) {
      for (long o = 0; o < outer; ++o)
        for (int it = 0; it < nt; ++it) {
          const double dt = std::pow(std::abs(ta.freq(it)), 1.0 / rho);
          piece[o * nt + it] = uh.values[o * nt + it] * famT.profile(k, dt);
        }
      fft_all(piece, std::vector<int>(shape.begin() + 1, shape.end()), true);
      for (int it = 0; it < nt; ++it) {
        double sacc = 0.0;
        for (long o = 0; o < outer; ++o) sacc += cellvol * std::pow(std::abs(piece[o * nt + it]), sp.p);
        nk[k][it] = std::pow(sacc, 1.0 / sp.p);
      }
    }
    std::vector<double> mt(nt, 0.0);
    for (int it = 0; it < nt; ++it) {
      double acc = 0.0;
      for (int k = 0; k < klevels; ++k)
        acc += std::pow(std::pow(2.0, (s + sp.target_shift) * k) * nk[k][it], sp.p);
      mt[it] = std::pow(acc, 1.0 / sp.p);
    }
    const double partA = detail::lq_time(mt, ta, sp.q);

    std::vector<double> ns;
    for (const DiscreteField& sl : detail::time_slices(u)) ns.push_back(space_norm(sl, spat, famS));
    const double partB = detail::lq_time(ns, ta, sp.q);

    const double rhs = partA + partB;
    if (lhs == 0.0 && rhs == 0.0) {
      ++rep.skipped;
      continue;
    }
    detail::ParamJson pj;
    pj.add("i", static_cast<long>(i)).add("band", static_cast<long>(band)).add("s", s).add("rho", rho);
    rep.samples.push_back({pj.str(), lhs, rhs, lhs / rhs});
  }
  return rep;
}

struct KernelMappingSpecs {
  double p = 2.0;
  double q = 2.0;
  double gamma = 0.0;
  int count = 10;
  int band_lo = 0;
  int band_hi = 5;
  std::uint64_t seed = 1;
  double bound = 30.0;
  double boundary_shift = 0.0;  // +1 = deliberate pairing violation
  Axis normal;
  Grid taxes;
  KernelOptions kernel;
  int threads = 1;
};

// Poisson operator boundedness at the matched exponent pairing: interior
// F^{sigma}_{p,q}(w_gamma) norm of the kernel solution against the boundary
// B^{sigma - m_j - (1+gamma)/p} norm of its datum.
inline RatioReport check_kernel_mapping(const BVSystem& sys, const std::vector<Complex>& lambdas,
                                        double sigma, const KernelMappingSpecs& sp) {
  sys.validate_half_space();
  const int m = sys.half_order();
  const int N = sys.state_dim;
  RatioReport rep;
  rep.claim = "kernel-mapping";
  rep.seed = sp.seed;
  rep.bound = sp.bound;

  Grid uaxes;
  uaxes.push_back(sp.normal);
  for (const Axis& a : sp.taxes) uaxes.push_back(a);
  Anisotropy uan = Anisotropy::isotropic(static_cast<int>(uaxes.size()));
  Anisotropy ban = Anisotropy::isotropic(static_cast<int>(sp.taxes.size()));
  LPFamily famI = build_lp_family(uan, uaxes);
  LPFamily famB = build_lp_family(ban, sp.taxes);
  std::vector<double> pI(uaxes.size(), sp.p), pB(sp.taxes.size(), sp.p);
  NormSpec interior{NormKind::TriebelLizorkin, sigma, pI, sp.q, sp.gamma, uan};

  for (int i = 0; i < sp.count; ++i) {
    const int band = sp.band_lo + i % (sp.band_hi - sp.band_lo + 1);
    std::vector<DiscreteField> g;
    for (int j = 0; j < m; ++j)
      g.push_back(random_band_field(sp.taxes, N, ban, band, sp.seed + 13 * i + 5 * j));
    double gn = 0.0;
    for (int j = 0; j < m; ++j) {
      const double sb = sigma - sys.boundary[j].order - (1.0 + sp.gamma) / sp.p + sp.boundary_shift;
      NormSpec nb{NormKind::Besov, sb, pB, sp.p, 0.0, ban};
      gn += space_norm(g[j], nb, famB);
    }
    if (gn == 0.0) {
      ++rep.skipped;
      continue;
    }
    const Complex lam = lambdas[i % lambdas.size()];
    SolveReport sol = halfspace_bvp_solve(sys, lam, g, sp.normal, sp.kernel, sp.threads);
    const double un = space_norm(sol.solution, interior, famI);
    detail::ParamJson pj;
    pj.add("i", static_cast<long>(i)).add("band", static_cast<long>(band)).add("lambda", lam)
        .add("sigma", sigma);
    rep.samples.push_back({pj.str(), un, gn, un / gn});
  }
  return rep;
}

struct SymbolBoundSpecs {
  double xi_max = 24.0;
  int xi_count = 9;  // per axis, log-ish symmetric grid
  double fd_scale = 1e-4;
  double bound = 100.0;
};

// Resolvent symbol bounds: sup over the xi grid of
//   <xi>^{|alpha|} |D^alpha_xi [ (s1 + s2 lambda + s3 |xi|^{2m}) (1 + lambda + A(xi))^{-1} ]|
// for the tuples (s1,s2,s3) in {(0,1,0),(1,0,1)}, derivatives by central
// differences. One sample per (lambda, tuple, alpha).
inline RatioReport check_symbol_bound(const BVSystem& sys, const std::vector<Complex>& lambdas,
                                      const std::vector<MultiIndex>& alphas,
                                      const SymbolBoundSpecs& sp) {
  sys.validate();
  const int n = sys.dim;
  const int N = sys.state_dim;
  RatioReport rep;
  rep.claim = "symbol-bound";
  rep.bound = sp.bound;

  // Symmetric geometric grid per axis: 0, +-xi_max/2^k.
  std::vector<double> pts{0.0};
  for (int k = 0; k < sp.xi_count / 2; ++k) {
    const double v = sp.xi_max / std::ldexp(1.0, k);
    pts.push_back(v);
    pts.push_back(-v);
  }
  std::vector<int> shape(n, static_cast<int>(pts.size()));

  const Matrix id = Matrix::Identity(N, N);
  const std::vector<std::pair<std::string, std::array<double, 3>>> tuples = {
      {"(0,1,0)", {0.0, 1.0, 0.0}}, {"(1,0,1)", {1.0, 0.0, 1.0}}};

  for (const Complex& lam : lambdas) {
    for (const auto& [tname, tv] : tuples) {
      for (const MultiIndex& alpha : alphas) {
        if (static_cast<int>(alpha.size()) != n)
          throw InputError("symbol bound: multi-index dimension mismatch");
        if (mi_order(alpha) > 2) throw InputError("symbol bound: derivative order above 2");
        double sup = 0.0;
        for_each_index(shape, [&](const std::vector<int>& idx) {
          std::vector<double> xi(n);
          double x2 = 0.0;
          for (int a = 0; a < n; ++a) {
            xi[a] = pts[idx[a]];
            x2 += xi[a] * xi[a];
          }
          const double bes = std::sqrt(1.0 + x2);
          auto value = [&](const std::vector<double>& y) -> Matrix {
            std::vector<Complex> yc(n);
            double y2 = 0.0;
            for (int a = 0; a < n; ++a) {
              yc[a] = Complex(y[a], 0.0);
              y2 += y[a] * y[a];
            }
            const Complex fac =
                tv[0] + tv[1] * lam + tv[2] * std::pow(y2, sys.order / 2.0);
            Matrix M = full_symbol(sys, yc) + (1.0 + lam) * id;
            return fac * M.partialPivLu().solve(id);
          };
          // Tensor central stencil for D^alpha at step h ~ <xi>.
          const double h = sp.fd_scale * bes;
          detail::Stencil st;
          st.points.push_back({std::vector<int>(n, 0), 1.0});
          for (int a = 0; a < n; ++a)
            if (alpha[a] > 0) st = detail::stencil_compose(st, detail::stencil_1d(a, n, alpha[a], h));
          Matrix acc = Matrix::Zero(N, N);
          std::vector<double> y(n);
          for (const auto& [off, w] : st.points) {
            for (int a = 0; a < n; ++a) y[a] = xi[a] + off[a] * h;
            acc += w * value(y);
          }
          sup = std::max(sup, std::pow(bes, mi_order(alpha)) * acc.norm());
        });
        detail::ParamJson pj;
        pj.add("lambda", lam).add("tuple", tname).add("alpha", mi_format(alpha));
        rep.samples.push_back({pj.str(), sup, 1.0, sup});
      }
    }
  }
  return rep;
}

// Log-spaced moduli crossed with argument rays: the standard lambda grid of
// the ratio checks.
inline std::vector<Complex> lambda_grid(const std::vector<double>& moduli,
                                        const std::vector<double>& args) {
  std::vector<Complex> out;
  for (double a : args)
    for (double m : moduli) out.push_back(std::polar(m, a));
  return out;
}

}  // namespace hslab
