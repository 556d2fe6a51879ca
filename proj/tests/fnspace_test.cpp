#include <gtest/gtest.h>

#include "hslab/ap.hpp"
#include "hslab/bessel.hpp"
#include "hslab/norms.hpp"
#include "hslab/pardep.hpp"
#include "hslab/seeley.hpp"
#include "hslab/traceext.hpp"
#include "hslab/verify.hpp"

using namespace hslab;

namespace {

Grid torus2(int n0, int n1, double ext = 4.0 * kPi) {
  return {tangential_axis(n0, ext), tangential_axis(n1, ext)};
}

double field_sup_diff(const DiscreteField& a, const DiscreteField& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST(LpFamily, ReconstructionOnBandLimitedFields) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 3, 17);
  LPFamily fam = build_lp_family(an, g);
  std::vector<DiscreteField> pieces = lp_pieces(f, fam);
  DiscreteField sum = DiscreteField::zeros(g, 1, an);
  for (const DiscreteField& pc : pieces)
    for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += pc.values[i];
  EXPECT_LT(field_sup_diff(sum, f), 1e-10);
}

TEST(LpFamily, ReconstructionWithAnisotropicWeights) {
  Anisotropy an{{1, 1}, {1.0, 2.0}};
  Grid g = torus2(32, 64);
  DiscreteField f = random_band_field(g, 2, an, 2, 5);
  LPFamily fam = build_lp_family(an, g);
  std::vector<DiscreteField> pieces = lp_pieces(f, fam);
  DiscreteField sum = DiscreteField::zeros(g, 2, an);
  for (const DiscreteField& pc : pieces)
    for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += pc.values[i];
  EXPECT_LT(field_sup_diff(sum, f), 1e-10);
}

TEST(LpFamily, PiecesAreBandLocalized) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 3, 23);
  LPFamily fam = build_lp_family(an, g);
  std::vector<DiscreteField> pieces = lp_pieces(f, fam);
  std::vector<double> mass(pieces.size(), 0.0);
  for (size_t k = 0; k < pieces.size(); ++k)
    for (const Complex& z : pieces[k].values) mass[k] += std::norm(z);
  double far = 0.0, total = 0.0;
  for (size_t k = 0; k < pieces.size(); ++k) {
    total += mass[k];
    if (k + 1 < 3 || k > 4) far += mass[k];
  }
  EXPECT_LT(far, 1e-20 * total);
}

TEST(LpFamily, CrossFamilyNormEquivalence) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  NormSpec spec{NormKind::Besov, 0.7, {2.0, 2.0}, 2.0, 0.0, an};
  for (int band = 0; band <= 4; ++band) {
    DiscreteField f = random_band_field(g, 1, an, band, 41 + band);
    double a = space_norm(f, spec, build_lp_family(an, g));
    double b = space_norm(f, spec, build_lp_family(an, g, -1, 1.0, 2.0, StepShape::BumpRatioSharp));
    double c = space_norm(f, spec, build_lp_family(an, g, -1, 1.3, 2.6));
    for (double r : {a / b, a / c, b / c}) {
      EXPECT_GT(r, 0.1);
      EXPECT_LT(r, 10.0);
    }
  }
}

TEST(Norms, BesovEqualsTriebelLizorkinAtPTwoQTwo) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 3, 9);
  LPFamily fam = build_lp_family(an, g);
  NormSpec bs{NormKind::Besov, 1.3, {2.0, 2.0}, 2.0, 0.0, an};
  NormSpec tl{NormKind::TriebelLizorkin, 1.3, {2.0, 2.0}, 2.0, 0.0, an};
  EXPECT_NEAR(space_norm(f, bs, fam), space_norm(f, tl, fam),
              1e-12 * space_norm(f, bs, fam));
}

TEST(Norms, SmoothnessZeroBesovIsComparableToL2) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 2, 31);
  LPFamily fam = build_lp_family(an, g);
  NormSpec bs{NormKind::Besov, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  NormSpec l2{NormKind::MixedLp, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  double r = space_norm(f, bs, fam) / space_norm(f, l2, fam);
  EXPECT_GT(r, 0.5);
  EXPECT_LT(r, 2.0);
}

TEST(Norms, MixedLpInfinityTakesSups) {
  Anisotropy an = Anisotropy::isotropic(1);
  Grid g{tangential_axis(16, 2.0 * kPi)};
  DiscreteField f = DiscreteField::zeros(g, 1, an);
  f.at(0, {3}) = Complex(2.5, 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(weighted_mixed_norm(f, {inf}), 2.5, 1e-14);
  EXPECT_NEAR(weighted_mixed_norm(f, {2.0}),
              2.5 * std::sqrt(2.0 * kPi / 16.0), 1e-12);
}

TEST(Norms, BesselSobolevZeroOrderCountsTheBlocks) {
  Anisotropy an{{1, 1}, {1.0, 2.0}};
  Grid g = torus2(16, 16);
  DiscreteField f = random_band_field(g, 1, an, 2, 3);
  LPFamily fam = build_lp_family(an, g);
  NormSpec bp{NormKind::BesselSobolev, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  NormSpec lp{NormKind::MixedLp, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  // J_0 sums one identity contribution per anisotropy block.
  EXPECT_NEAR(space_norm(f, bp, fam), 2.0 * space_norm(f, lp, fam),
              1e-12 * space_norm(f, lp, fam));
}

TEST(Bessel, SingleModeMultiplierClosedForm) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(16, 16, 2.0 * kPi);
  DiscreteField f = DiscreteField::zeros(g, 1, an);
  fill_field(f, 0, [](const std::vector<double>& x) {
    return std::exp(Complex(0.0, 1.0) * (3.0 * x[0] + 1.0 * x[1]));
  });
  DiscreteField jf = bessel_potential(f, 1.6, an);
  const double want = std::pow(1.0 + 9.0 + 1.0, 0.8);
  for (size_t i = 0; i < f.values.size(); ++i)
    EXPECT_NEAR(std::abs(jf.values[i] - want * f.values[i]), 0.0, 1e-10);
}

TEST(Bessel, OneBlockPotentialsInvert) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(16, 16);
  DiscreteField f = random_band_field(g, 1, an, 2, 77);
  DiscreteField back = bessel_potential(bessel_potential(f, 2.3, an), -2.3, an);
  EXPECT_LT(field_sup_diff(back, f), 1e-12);
}

TEST(Norms, AxisQuadratureIntegratesTheWeightExactly) {
  Axis ax = normal_axis(41, 3.0);
  for (double gamma : {0.0, 0.5, -0.5}) {
    std::vector<double> w = axis_quadrature(ax, gamma);
    double sum = 0.0;
    for (double v : w) sum += v;
    EXPECT_NEAR(sum, std::pow(3.0, 1.0 + gamma) / (1.0 + gamma), 1e-12);
  }
  EXPECT_THROW(axis_quadrature(ax, -1.0), GuardError);
}

TEST(Pardep, XiVariantAtEqualExponentsIsTheBaseNorm) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 2, 12);
  LPFamily fam = build_lp_family(an, g);
  NormSpec spec{NormKind::Besov, 0.8, {2.0, 2.0}, 2.0, 0.0, an};
  double a = pardep_norm(f, 0.8, 0.8, 5.0, spec, fam, PardepVariant::Xi);
  spec.s = 0.8;
  double b = space_norm(f, spec, fam);
  EXPECT_NEAR(a, b, 1e-12 * b);
}

TEST(Pardep, VariantsAreUniformlyComparable) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  NormSpec spec{NormKind::Besov, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  const double s = 1.4, s0 = 0.4;
  for (double mu : {0.0, 1.0, 10.0, 100.0}) {
    for (int band : {1, 3}) {
      DiscreteField f = random_band_field(g, 1, an, band, 91 + band);
      LPFamily fam = build_lp_family(an, g);
      double xi = pardep_norm(f, s, s0, mu, spec, fam, PardepVariant::Xi);
      double sum = pardep_norm(f, s, s0, mu, spec, fam, PardepVariant::Sum);
      double dil = pardep_norm(f, s, s0, mu, spec, fam, PardepVariant::Dilation);
      EXPECT_GT(xi / sum, 1.0 / 16.0) << "mu=" << mu << " band=" << band;
      EXPECT_LT(xi / sum, 16.0);
      EXPECT_GT(dil / sum, 1.0 / 16.0) << "mu=" << mu << " band=" << band;
      EXPECT_LT(dil / sum, 16.0);
    }
  }
}

TEST(Pardep, GrowsWithTheParameter) {
  Anisotropy an = Anisotropy::isotropic(2);
  Grid g = torus2(32, 32);
  DiscreteField f = random_band_field(g, 1, an, 2, 8);
  LPFamily fam = build_lp_family(an, g);
  NormSpec spec{NormKind::Besov, 0.0, {2.0, 2.0}, 2.0, 0.0, an};
  double lo = pardep_norm(f, 1.4, 0.4, 0.0, spec, fam, PardepVariant::Sum);
  double hi = pardep_norm(f, 1.4, 0.4, 50.0, spec, fam, PardepVariant::Sum);
  EXPECT_GT(hi, 5.0 * lo);
}

TEST(Seeley, MomentsMatchThroughOrderEight) {
  SeeleyData sd = seeley_coefficients(10);
  for (int l = 0; l <= 8; ++l) EXPECT_LT(seeley_moment_defect(sd, l), 1e-6) << "l=" << l;
}

TEST(Seeley, TooManyTermsTripTheConditioningGuard) {
  EXPECT_THROW(seeley_coefficients(13), GuardError);
  EXPECT_NO_THROW(seeley_coefficients(12));
}

TEST(Seeley, ExtensionRestrictsToTheOriginalField) {
  Axis nx = normal_axis(33, 16.0);
  Grid g{nx, tangential_axis(8, 2.0 * kPi)};
  Anisotropy an = Anisotropy::isotropic(2);
  DiscreteField f = DiscreteField::zeros(g, 1, an);
  fill_field(f, 0, [](const std::vector<double>& x) {
    return std::exp(-x[0]) * std::exp(Complex(0.0, x[1]));
  });
  DiscreteField ext = seeley_extend(f, detail::default_seeley());
  EXPECT_LT(ext.axes[0].origin, 0.0);
  EXPECT_TRUE(ext.axes[0].periodic());
  DiscreteField back = restrict_normal(ext, nx);
  // Interior samples are copied through; the far endpoint reads the torus
  // seam, consistent exactly up to the data's decay at x1 = extent.
  const long inner = f.axis_total() / nx.count;
  double interior = 0.0;
  for (long i = 0; i < (nx.count - 1) * inner; ++i)
    interior = std::max(interior, std::abs(back.values[i] - f.values[i]));
  EXPECT_LT(interior, 1e-15);
  EXPECT_LT(field_sup_diff(back, f), 2.0 * std::exp(-16.0));
}

TEST(TraceExtend, RoundTripIsTheIdentity) {
  Anisotropy ban = Anisotropy::isotropic(1);
  Grid bg{tangential_axis(32, 4.0 * kPi)};
  Axis nx = normal_axis(65, 16.0);
  LPFamily fam = build_lp_family(ban, bg);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
    const int band = static_cast<int>(seed) % 4;
    DiscreteField g = random_band_field(bg, 1, ban, band, seed);
    DiscreteField u = extend(g, fam, nx, 1.0);
    ASSERT_EQ(u.axes.size(), 2u);
    TraceResult tr = trace(u, build_lp_family(u.aniso, u.axes));
    // Boundary content near the grid's top band lands one octave higher after
    // extension, so the Cauchy diagnostic is meaningful only for low bands.
    if (band == 0) {
      EXPECT_TRUE(tr.cauchy_ok) << "seed=" << seed;
    }
    EXPECT_LT(field_sup_diff(tr.boundary, g), 1e-8) << "seed=" << seed;
  }
}

TEST(TraceExtend, IncrementsDecayForExtendedData) {
  Anisotropy ban = Anisotropy::isotropic(1);
  Grid bg{tangential_axis(32, 4.0 * kPi)};
  Axis nx = normal_axis(65, 16.0);
  LPFamily fam = build_lp_family(ban, bg);
  DiscreteField g = random_band_field(bg, 1, ban, 0, 99);
  DiscreteField u = extend(g, fam, nx, 1.0);
  TraceResult tr = trace(u, build_lp_family(u.aniso, u.axes));
  ASSERT_GT(tr.increments.size(), 2u);
  EXPECT_TRUE(tr.cauchy_ok);
  double peak = *std::max_element(tr.increments.begin(), tr.increments.end());
  EXPECT_LE(tr.increments.back(), 0.1 * peak);
}

TEST(Ap, UnweightedCharacteristicIsExactlyOne) {
  EXPECT_EQ(ap_characteristic(0.0, 2.0, 0), 1.0);
  EXPECT_EQ(ap_characteristic(0.0, 3.5, 6), 1.0);
}

TEST(Ap, SymmetricUnderDualityAtPTwo) {
  EXPECT_NEAR(ap_characteristic(0.5, 2.0, 8), ap_characteristic(-0.5, 2.0, 8), 1e-10);
}

TEST(Ap, MonotoneUnderRefinementAndBoundedByTheSup) {
  double prev = 0.0;
  for (int r = 0; r <= 8; ++r) {
    double v = ap_characteristic(0.7, 2.0, r);
    EXPECT_GE(v, prev);
    prev = v;
  }
  // Interval [0, 2] (t = 1) is in every family: [w]_{A_2} >= 1/(1-gamma^2).
  EXPECT_GE(prev, 1.0 / (1.0 - 0.49));
}

TEST(Ap, BlowsUpAtTheRangeBoundary) {
  EXPECT_GT(ap_characteristic(0.9999, 2.0, 10), 5e3);
  EXPECT_TRUE(std::isinf(ap_characteristic(-1.0, 2.0, 4)));
  EXPECT_TRUE(std::isinf(ap_characteristic(1.0, 2.0, 4)));
  EXPECT_TRUE(std::isinf(ap_characteristic(2.5, 3.0, 4)));
}
