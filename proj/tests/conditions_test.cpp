#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "hslab/bv_system.hpp"
#include "hslab/ellipticity.hpp"
#include "hslab/first_order.hpp"
#include "hslab/frequency.hpp"
#include "hslab/lopatinskii.hpp"
#include "hslab/model_systems.hpp"
#include "hslab/stable_roots.hpp"

using namespace hslab;

TEST(BVSystem, LaplacianValidates) {
  BVSystem sys = dirichlet_laplacian(3);
  EXPECT_NO_THROW(sys.validate_half_space());
  EXPECT_EQ(sys.half_order(), 1);
}

TEST(BVSystem, RejectsOddOrderAndBadBoundaryCounts) {
  BVSystem sys = dirichlet_laplacian(2);
  sys.order = 3;
  EXPECT_THROW(sys.validate(), InputError);

  BVSystem two = dirichlet_laplacian(2);
  two.boundary.push_back(neumann_op(2));
  EXPECT_THROW(two.validate_half_space(), InputError);

  BVSystem high = dirichlet_laplacian(2);
  high.boundary[0].order = 2;
  high.boundary[0].coeffs = {{unit_mi(2, 0, 2), scalar_coeff(1.0)}};
  EXPECT_THROW(high.validate_half_space(), InputError);
}

TEST(BVSystem, PrincipalSymbolOfLaplacian) {
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<Complex> xi{Complex(0.6, 0.0), Complex(0.8, 0.0)};
  Matrix s = principal_symbol(sys, xi);
  ASSERT_EQ(s.rows(), 1);
  EXPECT_NEAR(std::abs(s(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(full_symbol(sys, xi)(0, 0) - s(0, 0)), 0.0, 1e-14);
}

TEST(Frequency, JointBesselClosedForm) {
  FrequencyPoint fp{{3.0}, Complex(0.0, 2.0)};
  EXPECT_NEAR(joint_bessel(fp, 2), std::sqrt(1.0 + 81.0 + 4.0), 1e-12);
}

TEST(Frequency, RescaledVarsFrozenValues) {
  FrequencyPoint fp{{0.0}, Complex(0.0, 1.0)};
  RescaledVars rv = rescale_vars(fp, 2);
  EXPECT_NEAR(rv.rho, std::pow(2.0, 0.25), 1e-14);
  EXPECT_NEAR(rv.b[0], 0.0, 1e-14);
  EXPECT_NEAR(std::abs(rv.sigma - Complex(1.0, 1.0) / std::sqrt(2.0)), 0.0, 1e-14);
}

TEST(Frequency, RescaledVarsCompactRange) {
  for (double x : {0.0, 0.5, 4.0, 40.0}) {
    for (double lm : {0.0, 1.0, 1e4}) {
      FrequencyPoint fp{{x}, Complex(lm, 0.3 * lm)};
      RescaledVars rv = rescale_vars(fp, 2);
      double r = rv.b[0] * rv.b[0] + std::abs(rv.sigma);
      EXPECT_GT(r, 0.2);
      EXPECT_LT(r, 3.0);
    }
  }
}

TEST(Ellipticity, LaplacianHasZeroAngle) {
  EllipticityResult r = ellipticity_angle(dirichlet_laplacian(2));
  EXPECT_TRUE(r.elliptic);
  EXPECT_NEAR(r.angle, 0.0, 1e-12);
}

TEST(Ellipticity, RotationShowsUpInTheAngle) {
  EllipticityResult r = ellipticity_angle(rotated_laplacian(2, std::polar(1.0, 0.4)));
  EXPECT_TRUE(r.elliptic);
  EXPECT_NEAR(r.angle, 0.4, 1e-10);
}

TEST(Ellipticity, NegativeRealAxisRejected) {
  EllipticityResult r = ellipticity_angle(rotated_laplacian(2, Complex(-1.0, 0.0)));
  EXPECT_FALSE(r.elliptic);
}

TEST(Ellipticity, WaveOperatorIsNotElliptic) {
  EllipticityResult r = ellipticity_angle(wave_system(2));
  EXPECT_FALSE(r.elliptic);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Ellipticity, DiagonalSystemElliptic) {
  EllipticityResult r = ellipticity_angle(diagonal_laplacians(2, {1.0, 2.0}));
  EXPECT_TRUE(r.elliptic);
  EXPECT_NEAR(r.angle, 0.0, 1e-12);
}

TEST(StableRoots, LaplacianClosedForm) {
  BVSystem sys = dirichlet_laplacian(2);
  const Complex lam(2.0, 1.0);
  const double xp = 0.7;
  StableRoots r = stable_roots(sys, FrequencyPoint{{xp}, 1.0 + lam});
  ASSERT_EQ(r.stable.size(), 1u);
  ASSERT_EQ(r.unstable.size(), 1u);
  Complex expect = Complex(0.0, 1.0) * std::sqrt(1.0 + lam + xp * xp);
  EXPECT_NEAR(std::abs(r.stable[0] - expect), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.unstable[0] + expect), 0.0, 1e-12);
}

TEST(StableRoots, BilaplacianRootsSolveTheQuartic) {
  BVSystem sys = clamped_bilaplacian(2);
  const Complex shifted(3.0, 2.0);  // 1 + lambda
  const double q = 0.25;            // |xi'|^2
  StableRoots r = stable_roots(sys, FrequencyPoint{{0.5}, shifted});
  ASSERT_EQ(r.stable.size(), 2u);
  for (Complex tau : r.stable) {
    EXPECT_GT(tau.imag(), 0.0);
    Complex w = tau * tau + q;
    EXPECT_NEAR(std::abs(w * w + shifted), 0.0, 1e-10);
  }
}

TEST(FirstOrder, CompanionEigenvaluesMatchScaledRoots) {
  BVSystem sys = dirichlet_laplacian(2);
  FrequencyPoint fp{{1.3}, Complex(4.0, -2.0)};
  RescaledVars rv = rescale_vars(fp, sys.order);
  FirstOrderReduction red = reduce_first_order(sys, rv);
  Eigen::ComplexEigenSolver<Matrix> es(red.A0, false);
  StableRoots roots = stable_roots(sys, FrequencyPoint{fp.xi_prime, 1.0 + fp.lambda});
  std::vector<Complex> want;
  for (Complex t : roots.stable) want.push_back(t / rv.rho);
  for (Complex t : roots.unstable) want.push_back(t / rv.rho);
  ASSERT_EQ(es.eigenvalues().size(), 2);
  for (int i = 0; i < 2; ++i) {
    double best = 1e9;
    for (Complex w : want) best = std::min(best, std::abs(es.eigenvalues()(i) - w));
    EXPECT_LT(best, 1e-10);
  }
}

TEST(FirstOrder, DirichletBoundaryRowSelectsTheValueSlot) {
  BVSystem sys = dirichlet_laplacian(2);
  Matrix rows = boundary_rows(sys, {0.4});
  ASSERT_EQ(rows.rows(), 1);
  ASSERT_EQ(rows.cols(), 2);
  EXPECT_NEAR(std::abs(rows(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(rows(0, 1)), 0.0, 1e-14);
}

TEST(Lopatinskii, DirichletAndNeumannPassOnTheLaplacian) {
  for (const BVSystem& sys : {dirichlet_laplacian(2), neumann_laplacian(2)}) {
    for (double xp : {-1.5, 0.5, 2.0}) {
      for (Complex lam : {Complex(0.0, 0.0), Complex(10.0, 5.0)}) {
        LSResult r = ls_condition(sys, FrequencyPoint{{xp}, lam});
        EXPECT_GT(r.value, 0.3) << "xi'=" << xp;
        EXPECT_GT(r.gap, 1e-3);
      }
    }
  }
}

TEST(Lopatinskii, DirichletPassesOnTheBilaplacian) {
  BVSystem sys = clamped_bilaplacian(2);
  for (double xp : {-1.0, 1.0}) {
    LSResult r = ls_condition(sys, FrequencyPoint{{xp}, Complex(2.0, 1.0)});
    EXPECT_GT(r.value, 1e-2);
  }
}

TEST(Lopatinskii, CauchyRiemannFailsOnOneSide) {
  BVSystem sys = laplacian_system(2, cauchy_riemann_op(2));
  LSResult bad = ls_condition(sys, FrequencyPoint{{-1.0}, Complex(0.0, 0.0)});
  EXPECT_LT(bad.value, 1e-10);
  LSResult good = ls_condition(sys, FrequencyPoint{{1.0}, Complex(0.0, 0.0)});
  EXPECT_GT(good.value, 0.3);
}

TEST(Lopatinskii, OdeRouteAgreesWithTheSchurRoute) {
  BVSystem sys = dirichlet_laplacian(2);
  for (double xp : {-2.0, 0.7}) {
    FrequencyPoint fp{{xp}, Complex(3.0, 1.0)};
    LSResult a = ls_condition(sys, fp);
    LSResult b = ls_condition_ode(sys, fp);
    EXPECT_NEAR(a.value, b.value, 1e-6);
  }
}

TEST(Lopatinskii, RealAxisRootTripsTheGuard) {
  BVSystem sys = wave_system(2);
  EXPECT_THROW(ls_condition(sys, FrequencyPoint{{1.0}, Complex(0.0, 0.0)}), GuardError);
}
