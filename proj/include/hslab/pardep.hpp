#pragma once

#include <cmath>
#include <vector>

#include "hslab/norms.hpp"

namespace hslab {

enum class PardepVariant { Xi, Sum, Dilation };

namespace detail {

// Apply the isotropic multiplier (1 + |xi|^2 + mu^2)^{sigma/2}, extending a
// half-line axis first and restricting afterwards.
inline DiscreteField xi_multiplier(const DiscreteField& f, double sigma, double mu,
                                   const SeeleyData& sd) {
  const bool half_line = !f.axes.empty() && !f.axes[0].periodic();
  DiscreteField g = half_line ? seeley_extend(f, sd) : f;
  const std::vector<int> shape = g.shape();
  const long total = g.axis_total();
  for (int c = 0; c < g.components; ++c) {
    std::vector<Complex> comp(g.values.begin() + c * total, g.values.begin() + (c + 1) * total);
    fft_all(comp, shape, false);
    long i = 0;
    for_each_index(shape, [&](const std::vector<int>& idx) {
      double x2 = mu * mu;
      for (size_t a = 0; a < g.axes.size(); ++a) {
        double xi = g.axes[a].freq(idx[a]);
        x2 += xi * xi;
      }
      comp[i++] *= std::pow(1.0 + x2, 0.5 * sigma);
    });
    fft_all(comp, shape, true);
    std::copy(comp.begin(), comp.end(), g.values.begin() + c * total);
  }
  return half_line ? restrict_normal(g, f.axes[0]) : g;
}

// Littlewood-Paley pieces with the profiles read at |xi|_{d,a} / scale, the
// spectral form of analyzing the dilated function f(./scale). Levels are
// chosen so the scaled partition still covers the lattice.
inline std::vector<DiscreteField> lp_pieces_scaled(const DiscreteField& f, const LPFamily& fam,
                                                   double scale, const SeeleyData& sd) {
  const bool half_line = !f.axes.empty() && !f.axes[0].periodic();
  DiscreteField g = half_line ? seeley_extend(f, sd) : f;
  const std::vector<int> shape = g.shape();
  const long total = g.axis_total();

  double maxdist = grid_max_quasinorm(g.axes, fam.aniso) / scale;
  int K = 0;
  while (std::ldexp(fam.A, K) < maxdist) ++K;

  std::vector<double> dist(total);
  {
    long i = 0;
    for_each_index(shape, [&](const std::vector<int>& idx) {
      dist[i++] = aniso_distance(fam.aniso, lattice_freq(g, idx)) / scale;
    });
  }
  std::vector<Complex> hat = g.values;
  for (int c = 0; c < g.components; ++c) {
    std::vector<Complex> comp(hat.begin() + c * total, hat.begin() + (c + 1) * total);
    fft_all(comp, shape, false);
    std::copy(comp.begin(), comp.end(), hat.begin() + c * total);
  }
  std::vector<DiscreteField> pieces;
  for (int k = 0; k <= K; ++k) {
    DiscreteField piece = g;
    for (int c = 0; c < g.components; ++c) {
      std::vector<Complex> comp(hat.begin() + c * total, hat.begin() + (c + 1) * total);
      for (long i = 0; i < total; ++i) comp[i] *= fam.profile(k, dist[i]);
      fft_all(comp, shape, true);
      std::copy(comp.begin(), comp.end(), piece.values.begin() + c * total);
    }
    pieces.push_back(half_line ? restrict_normal(piece, f.axes[0]) : std::move(piece));
  }
  return pieces;
}

}  // namespace detail

// Parameter-dependent norm of strength (s, s0) at parameter mu >= 0, three
// interchangeable forms whose mutual ratios are the object of study:
//   Xi        |Xi^{s-s0}_mu f| in the s0-norm, Xi^sigma_mu the multiplier
//             (1 + |xi|^2 + mu^2)^{sigma/2}
//   Sum       |f|_s + <mu>^{s-s0} |f|_{s0}
//   Dilation  <mu>^s ( sum_k 2^{ksq} |F^{-1} phi^_k(./<mu>) f^|_{L_p(w)}^q )^{1/q},
//             the Besov norm of the <mu>-dilate, computed spectrally
// spec.s is overridden by s / s0 as appropriate.
inline double pardep_norm(const DiscreteField& f, double s, double s0, double mu,
                          const NormSpec& spec, const LPFamily& fam, PardepVariant variant,
                          const SeeleyData& sd = detail::default_seeley()) {
  if (mu < 0.0) throw InputError("pardep_norm: mu must be >= 0");
  const double bmu = std::sqrt(1.0 + mu * mu);
  switch (variant) {
    case PardepVariant::Xi: {
      DiscreteField lifted = detail::xi_multiplier(f, s - s0, mu, sd);
      NormSpec base = spec;
      base.s = s0;
      return space_norm(lifted, base, fam, sd);
    }
    case PardepVariant::Sum: {
      NormSpec hi = spec;
      hi.s = s;
      NormSpec lo = spec;
      lo.s = s0;
      return space_norm(f, hi, fam, sd) + std::pow(bmu, s - s0) * space_norm(f, lo, fam, sd);
    }
    case PardepVariant::Dilation: {
      std::vector<DiscreteField> pieces = detail::lp_pieces_scaled(f, fam, bmu, sd);
      const std::vector<double> gam = detail::weight_vector(f, spec.gamma);
      std::vector<double> terms;
      for (size_t k = 0; k < pieces.size(); ++k)
        terms.push_back(std::pow(2.0, s * static_cast<double>(k)) *
                        weighted_mixed_norm(pieces[k], spec.p, gam));
      return std::pow(bmu, s) * detail::lq_combine(terms, spec.q);
    }
  }
  throw InputError("pardep_norm: unknown variant");
}

}  // namespace hslab
