#pragma once

#include <cmath>
#include <vector>

#include "hslab/fft.hpp"
#include "hslab/field.hpp"
#include "hslab/seeley.hpp"
#include "hslab/smoothstep.hpp"

namespace hslab {

enum class StepShape { BumpRatio, BumpRatioSharp };

// Anisotropic Littlewood-Paley family: radial profiles in the quasi-norm
// |xi|_{d,a}, phi^_0 = 1 on {|xi| <= A}, 0 outside {|xi| < B}, and
// phi^_k = phi^_0(delta_{2^{-k}} xi) - phi^_0(delta_{2^{-k+1}} xi), k >= 1,
// so that sum_{k<=K} phi^_k(xi) = phi^_0(delta_{2^{-K}} xi) telescopes to 1
// on {|xi| <= 2^K A}. Profiles are functions of the quasi-norm only; the
// family is immutable and shareable.
struct LPFamily {
  Anisotropy aniso;
  double A = 1.0;
  double B = 2.0;
  int levels = 0;  // top index K; pieces are 0..K
  StepShape shape = StepShape::BumpRatio;

  double profile0(double dist) const {
    double sharp = (shape == StepShape::BumpRatioSharp) ? 2.0 : 1.0;
    return detail::smooth_transition((B - dist) / (B - A), sharp);
  }
  double profile(int k, double dist) const {
    if (k == 0) return profile0(dist);
    return profile0(std::ldexp(dist, -k)) - profile0(std::ldexp(dist, -k + 1));
  }
  // Retained band: where the truncated family still sums to 1.
  double coverage() const { return std::ldexp(A, levels); }
};

// Largest quasi-norm on the frequency lattice of an all-periodic grid (a
// normal axis contributes through its Seeley extension's torus).
inline double grid_max_quasinorm(const Grid& grid, const Anisotropy& aniso) {
  if (aniso.total_dim() != static_cast<int>(grid.size()))
    throw InputError("grid_max_quasinorm: anisotropy does not cover the axes");
  std::vector<double> xi(grid.size());
  for (size_t a = 0; a < grid.size(); ++a) {
    const Axis& ax = grid[a];
    double extent = ax.periodic() ? ax.extent : 2.0 * ax.extent;
    int count = ax.periodic() ? ax.count : 2 * (ax.count - 1);
    xi[a] = 2.0 * kPi * (count / 2) / extent;
  }
  return aniso_distance(aniso, xi);
}

// levels < 0 picks the smallest K whose coverage reaches the lattice corner,
// making the partition of unity complete on the whole grid.
inline LPFamily build_lp_family(const Anisotropy& aniso, const Grid& grid, int levels = -1,
                                double A = 1.0, double B = 2.0,
                                StepShape shape = StepShape::BumpRatio) {
  if (!(0.0 < A && A < B)) throw InputError("lp family: need 0 < A < B");
  if (!(B <= 2.0 * A)) throw InputError("lp family: need B <= 2A for 3-term overlap");
  double maxdist = grid_max_quasinorm(grid, aniso);
  LPFamily fam;
  fam.aniso = aniso;
  fam.A = A;
  fam.B = B;
  fam.shape = shape;
  if (levels < 0) {
    int K = 0;
    while (std::ldexp(A, K) < maxdist) ++K;
    fam.levels = K;
  } else {
    fam.levels = levels;
    if (std::ldexp(A, levels - 1) > maxdist)
      throw GuardError(Guard::BandExceedsGrid,
                       "top annulus lies wholly beyond the frequency lattice");
  }
  return fam;
}

namespace detail {

inline const SeeleyData& default_seeley() {
  static const SeeleyData sd = seeley_coefficients(10);
  return sd;
}

}  // namespace detail

// Littlewood-Paley pieces S_k f, k = 0..levels, on f's own grid. A half-line
// normal axis is Seeley-extended before the Fourier analysis and each piece
// restricted back afterwards; zero-extension is never used. Throws
// BandExceedsGrid when f has frequency content the truncated family cannot
// see (only possible with explicitly lowered levels).
inline std::vector<DiscreteField> lp_pieces(const DiscreteField& f, const LPFamily& fam,
                                            const SeeleyData& sd = detail::default_seeley()) {
  f.validate();
  const bool half_line = !f.axes.empty() && !f.axes[0].periodic();
  DiscreteField g = half_line ? seeley_extend(f, sd) : f;
  const std::vector<int> shape = g.shape();
  const long total = g.axis_total();

  std::vector<Complex> hat = g.values;
  for (int c = 0; c < g.components; ++c) {
    std::vector<Complex> comp(hat.begin() + c * total, hat.begin() + (c + 1) * total);
    fft_all(comp, shape, false);
    std::copy(comp.begin(), comp.end(), hat.begin() + c * total);
  }

  if (fam.aniso.total_dim() != static_cast<int>(g.axes.size()))
    throw InputError("lp_pieces: family anisotropy does not cover the axes");
  std::vector<double> dist(total);
  {
    long i = 0;
    for_each_index(shape, [&](const std::vector<int>& idx) {
      dist[i++] = aniso_distance(fam.aniso, lattice_freq(g, idx));
    });
  }
  double dropped = 0.0, present = 0.0;
  for (long i = 0; i < total; ++i) {
    double s = 0.0;
    for (int k = 0; k <= fam.levels; ++k) s += fam.profile(k, dist[i]);
    for (int c = 0; c < g.components; ++c) {
      double m = std::norm(hat[c * total + i]);
      present += m;
      dropped += m * (1.0 - s) * (1.0 - s);
    }
  }
  if (dropped > 1e-20 * present)
    throw GuardError(Guard::BandExceedsGrid,
                     "field has frequency content beyond the family's coverage");

  std::vector<DiscreteField> pieces;
  for (int k = 0; k <= fam.levels; ++k) {
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

// Max deviation of sum_k phi^_k from 1 over the lattice points within the
// family's coverage. A normal axis is replaced by its extension torus, the
// lattice actually used by lp_pieces.
inline double lp_partition_defect(const LPFamily& fam, const Grid& grid) {
  Grid lattice = grid;
  if (!lattice.empty() && !lattice[0].periodic()) {
    Axis ext;
    ext.count = 2 * (lattice[0].count - 1);
    ext.extent = 2.0 * lattice[0].extent;
    ext.role = AxisRole::Normal;
    ext.origin = -lattice[0].extent;
    lattice[0] = ext;
  }
  DiscreteField probe = DiscreteField::zeros(lattice, 1, fam.aniso);
  double worst = 0.0;
  for_each_index(probe.shape(), [&](const std::vector<int>& idx) {
    double d = aniso_distance(fam.aniso, lattice_freq(probe, idx));
    if (d > fam.coverage()) return;
    double s = 0.0;
    for (int k = 0; k <= fam.levels; ++k) s += fam.profile(k, d);
    worst = std::max(worst, std::abs(s - 1.0));
  });
  return worst;
}

}  // namespace hslab
