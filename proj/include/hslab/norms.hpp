#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "hslab/bessel.hpp"
#include "hslab/lp.hpp"

namespace hslab {

// Quadrature weights of one axis against x^gamma dx. Periodic axes use the
// rectangle rule scaled by the weight at the node; interval axes integrate
// the weight against the piecewise-linear hat functions exactly, which at
// gamma = 0 is the trapezoid rule and stays finite for gamma in (-1, 0).
inline std::vector<double> axis_quadrature(const Axis& ax, double gamma) {
  ax.validate();
  if (gamma <= -1.0)
    throw GuardError(Guard::NonIntegrableWeight, "power weight with exponent <= -1");
  std::vector<double> w(ax.count, 0.0);
  if (ax.periodic()) {
    if (gamma != 0.0 && ax.origin < 0.0)
      throw InputError("axis_quadrature: power weight on an extended torus axis");
    double cell = ax.extent / ax.count;
    for (int i = 0; i < ax.count; ++i) {
      double x = ax.coord(i);
      w[i] = cell * (gamma == 0.0 ? 1.0 : std::pow(std::abs(x), gamma));
    }
    return w;
  }
  for (int i = 0; i + 1 < ax.count; ++i) {
    double xa = ax.coord(i);
    double xb = ax.coord(i + 1);
    double L = xb - xa;
    double M0 = (std::pow(xb, gamma + 1.0) - std::pow(xa, gamma + 1.0)) / (gamma + 1.0);
    double M1 = (std::pow(xb, gamma + 2.0) - std::pow(xa, gamma + 2.0)) / (gamma + 2.0);
    w[i] += (xb * M0 - M1) / L;
    w[i + 1] += (M1 - xa * M0) / L;
  }
  return w;
}

// Iterated norm L_{p_r}( ... L_{p_1}(w_1) ... ), innermost axis first (axis 0
// is the inner integral, matching the nesting of the mixed-norm spaces).
// gamma, when given, is the power-weight exponent per axis. Components are
// combined pointwise in l_2 before integrating. p_a = infinity takes a sup.
inline double weighted_mixed_norm(const DiscreteField& f, const std::vector<double>& p,
                                  const std::vector<double>& gamma = {}) {
  f.validate();
  const size_t r = f.axes.size();
  if (p.size() != r) throw InputError("weighted_mixed_norm: one exponent per axis required");
  if (!gamma.empty() && gamma.size() != r)
    throw InputError("weighted_mixed_norm: one weight exponent per axis required");

  const long total = f.axis_total();
  std::vector<double> cur(total);
  for (long i = 0; i < total; ++i) {
    double s = 0.0;
    for (int c = 0; c < f.components; ++c) s += std::norm(f.values[c * total + i]);
    cur[i] = std::sqrt(s);
  }

  for (size_t a = 0; a < r; ++a) {
    const double ga = gamma.empty() ? 0.0 : gamma[a];
    const std::vector<double> w = axis_quadrature(f.axes[a], ga);
    const int n = f.axes[a].count;
    const long inner = static_cast<long>(cur.size()) / n;
    const double pa = p[a];
    std::vector<double> next(inner, 0.0);
    if (std::isinf(pa)) {
      for (int i = 0; i < n; ++i)
        for (long t = 0; t < inner; ++t) next[t] = std::max(next[t], cur[i * inner + t]);
    } else {
      if (!(pa > 0.0)) throw InputError("weighted_mixed_norm: exponents must be positive");
      for (int i = 0; i < n; ++i)
        for (long t = 0; t < inner; ++t) next[t] += w[i] * std::pow(cur[i * inner + t], pa);
      for (long t = 0; t < inner; ++t) next[t] = std::pow(next[t], 1.0 / pa);
    }
    cur = std::move(next);
  }
  return cur[0];
}

enum class NormKind { MixedLp, Besov, TriebelLizorkin, BesselSobolev };

struct NormSpec {
  NormKind kind = NormKind::MixedLp;
  double s = 0.0;
  std::vector<double> p;
  double q = 2.0;       // micro index, may be infinity
  double gamma = 0.0;   // power weight on the normal axis
  Anisotropy aniso;
};

namespace detail {

inline double lq_combine(const std::vector<double>& v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

inline std::vector<double> weight_vector(const DiscreteField& f, double gamma) {
  std::vector<double> g(f.axes.size(), 0.0);
  if (gamma != 0.0) {
    if (f.axes.empty() || f.axes[0].role != AxisRole::Normal)
      throw InputError("space norm: power weight requires a normal axis");
    g[0] = gamma;
  }
  return g;
}

}  // namespace detail

// The four norm families over one LP analysis:
//   Besov            l_q over k of 2^{ks} |S_k f|_{L_p(w)}
//   Triebel-Lizorkin |l_q over k of 2^{ks} S_k f|_{L_p(w)} (pointwise l_q)
//   BesselSobolev    |J_s f|_{L_p(w)}
//   MixedLp          |f|_{L_p(w)}
inline double space_norm(const DiscreteField& f, const NormSpec& spec, const LPFamily& fam,
                         const SeeleyData& sd = detail::default_seeley()) {
  f.validate();
  const std::vector<double> gam = detail::weight_vector(f, spec.gamma);
  switch (spec.kind) {
    case NormKind::MixedLp:
      return weighted_mixed_norm(f, spec.p, gam);
    case NormKind::Besov: {
      std::vector<DiscreteField> pieces = lp_pieces(f, fam, sd);
      std::vector<double> terms;
      for (size_t k = 0; k < pieces.size(); ++k)
        terms.push_back(std::pow(2.0, spec.s * static_cast<double>(k)) *
                        weighted_mixed_norm(pieces[k], spec.p, gam));
      return detail::lq_combine(terms, spec.q);
    }
    case NormKind::TriebelLizorkin: {
      std::vector<DiscreteField> pieces = lp_pieces(f, fam, sd);
      DiscreteField G = DiscreteField::zeros(f.axes, 1, f.aniso);
      const long total = G.axis_total();
      for (long i = 0; i < total; ++i) {
        std::vector<double> v;
        for (size_t k = 0; k < pieces.size(); ++k) {
          double s2 = 0.0;
          for (int c = 0; c < f.components; ++c) s2 += std::norm(pieces[k].values[c * total + i]);
          v.push_back(std::pow(2.0, spec.s * static_cast<double>(k)) * std::sqrt(s2));
        }
        G.values[i] = detail::lq_combine(v, spec.q);
      }
      return weighted_mixed_norm(G, spec.p, gam);
    }
    case NormKind::BesselSobolev: {
      if (!f.axes.empty() && !f.axes[0].periodic()) {
        DiscreteField g = seeley_extend(f, sd);
        DiscreteField lifted = bessel_potential(g, spec.s, spec.aniso);
        return weighted_mixed_norm(restrict_normal(lifted, f.axes[0]), spec.p, gam);
      }
      return weighted_mixed_norm(bessel_potential(f, spec.s, spec.aniso), spec.p, gam);
    }
  }
  throw InputError("space_norm: unknown kind");
}

}  // namespace hslab
