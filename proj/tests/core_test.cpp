#include <gtest/gtest.h>

#include <random>

#include "hslab/anisotropy.hpp"
#include "hslab/fft.hpp"
#include "hslab/field.hpp"
#include "hslab/grid.hpp"
#include "hslab/multiindex.hpp"
#include "hslab/smoothstep.hpp"

using namespace hslab;

TEST(Anisotropy, IsotropicDistanceIsEuclidean) {
  Anisotropy an = Anisotropy::isotropic(3);
  std::vector<double> x{3.0, 0.0, 4.0};
  EXPECT_NEAR(aniso_distance(an, x), 5.0, 1e-14);
}

TEST(Anisotropy, DistanceHomogeneousUnderAnisotropicDilation) {
  Anisotropy an{{2, 1}, {1.0, 2.0}};
  std::vector<double> x{0.3, -1.1, 0.7};
  for (double t : {0.5, 2.0, 7.0}) {
    std::vector<double> xt = aniso_dilate(an, t, x);
    EXPECT_NEAR(aniso_distance(an, xt), t * aniso_distance(an, x),
                1e-12 * (1.0 + t * aniso_distance(an, x)));
  }
}

TEST(Anisotropy, BesselDominatesDistanceAndOne) {
  Anisotropy an{{1, 1}, {1.0, 2.0}};
  std::vector<double> x{1.3, -0.4};
  EXPECT_GE(aniso_bessel(an, x), 1.0);
  EXPECT_GE(aniso_bessel(an, x), aniso_distance(an, x));
}

TEST(Anisotropy, ValidateRejectsMismatch) {
  Anisotropy an{{2}, {1.0, 2.0}};
  EXPECT_THROW(an.validate(), InputError);
}

TEST(MultiIndex, FormatParseRoundTrip) {
  MultiIndex a{2, 0, 3};
  EXPECT_EQ(mi_format(a), "2,0,3");
  EXPECT_EQ(mi_parse("2,0,3"), a);
  EXPECT_EQ(mi_parse("2,0,3", 3), a);
  EXPECT_THROW(mi_parse("2,0,3", 2), InputError);
  EXPECT_THROW(mi_parse("2,,3"), InputError);
  EXPECT_THROW(mi_parse("2,-1"), InputError);
}

TEST(MultiIndex, EnumerationCounts) {
  EXPECT_EQ(mi_with_order(3, 2).size(), 6u);   // C(2+2,2)
  EXPECT_EQ(mi_up_to_order(2, 2).size(), 6u);  // 1 + 2 + 3
  for (const MultiIndex& a : mi_with_order(3, 2)) EXPECT_EQ(mi_order(a), 2);
}

TEST(MultiIndex, PowerMatchesComponents) {
  std::vector<Complex> xi{Complex(2.0, 0.0), Complex(0.0, 1.0)};
  EXPECT_NEAR(std::abs(mi_power(xi, {3, 2}) - Complex(-8.0, 0.0)), 0.0, 1e-14);
}

TEST(Grid, NormalAxisCoordsAndRoles) {
  Axis a = normal_axis(9, 4.0);
  EXPECT_FALSE(a.periodic());
  EXPECT_NEAR(a.coord(0), 0.0, 1e-15);
  EXPECT_NEAR(a.coord(8), 4.0, 1e-15);
  Axis t = tangential_axis(8, 2.0 * kPi);
  EXPECT_TRUE(t.periodic());
  EXPECT_NEAR(t.freq(1), 1.0, 1e-15);
  EXPECT_NEAR(t.freq(7), -1.0, 1e-15);  // wrapped lattice
}

TEST(Grid, GradedAxisClustersAtZero) {
  Axis g = graded_normal_axis(17, 8.0, 0.0);
  EXPECT_LT(g.coord(1) - g.coord(0), (g.coord(16) - g.coord(0)) / 16.0);
  EXPECT_NEAR(g.coord(16), 8.0, 1e-12);
}

TEST(Grid, ValidateRejectsBadCounts) {
  Axis a;
  a.count = 0;
  a.extent = 1.0;
  EXPECT_THROW(a.validate(), InputError);
}

TEST(Fft, RoundTripIsIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<int> shape{8, 16};
  std::vector<Complex> v(8 * 16);
  for (Complex& z : v) z = Complex(u(rng), u(rng));
  std::vector<Complex> w = v;
  fft_all(w, shape, false);
  fft_all(w, shape, true);
  for (size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(std::abs(v[i] - w[i]), 0.0, 1e-13);
}

TEST(Fft, DeltaHasFlatSpectrum) {
  std::vector<Complex> v(16, Complex(0.0, 0.0));
  v[0] = Complex(1.0, 0.0);
  fft_all(v, {16}, false);
  for (const Complex& z : v) EXPECT_NEAR(std::abs(z - Complex(1.0, 0.0)), 0.0, 1e-14);
}

TEST(Fft, ParsevalHolds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(32);
  for (Complex& z : v) z = Complex(u(rng), u(rng));
  double e_phys = 0.0;
  for (const Complex& z : v) e_phys += std::norm(z);
  std::vector<Complex> w = v;
  fft_all(w, {32}, false);
  double e_freq = 0.0;
  for (const Complex& z : w) e_freq += std::norm(z);
  EXPECT_NEAR(e_freq, 32.0 * e_phys, 1e-10 * e_freq);
}

TEST(Fft, RejectsNonPowerOfTwo) {
  std::vector<Complex> v(12);
  EXPECT_THROW(fft_all(v, {12}, false), InputError);
}

TEST(Field, IndexingIsRowMajorWithComponentOutermost) {
  Grid axes{tangential_axis(4, 1.0), tangential_axis(2, 1.0)};
  DiscreteField f = DiscreteField::zeros(axes, 2, Anisotropy::isotropic(2));
  EXPECT_EQ(f.axis_total(), 8);
  EXPECT_EQ(static_cast<long>(f.values.size()), 16);
  f.at(1, {3, 1}) = Complex(5.0, 0.0);
  EXPECT_NEAR(f.values[8 + 3 * 2 + 1].real(), 5.0, 0.0);
}

TEST(Field, CoordsFollowAxes) {
  Grid axes{normal_axis(5, 2.0), tangential_axis(4, 4.0)};
  DiscreteField f = DiscreteField::zeros(axes, 1, Anisotropy::isotropic(2));
  std::vector<double> x = f.coords({2, 1});
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(Field, ValidateRejectsSizeMismatch) {
  Grid axes{tangential_axis(4, 1.0)};
  DiscreteField f = DiscreteField::zeros(axes, 1, Anisotropy::isotropic(1));
  f.values.pop_back();
  EXPECT_THROW(f.validate(), InputError);
}

TEST(SmoothStep, EndpointsAndMonotonicity) {
  EXPECT_EQ(detail::smooth_transition(-0.2), 0.0);
  EXPECT_EQ(detail::smooth_transition(1.2), 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    double v = detail::smooth_transition(i / 20.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  EXPECT_NEAR(detail::smooth_transition(0.5), 0.5, 1e-12);
}
