#include <gtest/gtest.h>

#include "hslab/kernel.hpp"
#include "hslab/kernel_estimates.hpp"
#include "hslab/model_systems.hpp"
#include "hslab/stable_projection.hpp"
#include "hslab/verify.hpp"

using namespace hslab;

namespace {

Matrix diag4(Complex a, Complex b, Complex c, Complex d) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST(StableProjection, SplitsADiagonalMatrix) {
  Matrix A = diag4(Complex(0.0, 2.0), Complex(1.0, -1.0), Complex(-3.0, 0.5),
                   Complex(0.0, -4.0));
  StableDecomposition sd = stable_projection(A, 1e-10, 2);
  EXPECT_EQ(sd.n_stable, 2);
  EXPECT_NEAR(sd.gap, 0.5, 1e-12);
  for (int i = 0; i < 2; ++i) EXPECT_GT(sd.eigs[i].imag(), 0.0);
  // P is the spectral projection: P^2 = P, A P = P A, rank 2.
  EXPECT_NEAR((sd.P * sd.P - sd.P).norm(), 0.0, 1e-12);
  EXPECT_NEAR((A * sd.P - sd.P * A).norm(), 0.0, 1e-12);
  EXPECT_NEAR((sd.P * sd.Q - sd.Q).norm(), 0.0, 1e-12);
  EXPECT_NEAR((sd.Q.adjoint() * sd.Q - Matrix::Identity(2, 2)).norm(), 0.0, 1e-12);
  // Q spans an invariant subspace with the stable eigenvalues on T11.
  EXPECT_NEAR((A * sd.Q - sd.Q * sd.T11).norm(), 0.0, 1e-12);
}

TEST(StableProjection, GuardsOnGapAndCount) {
  Matrix real_eig = diag4(Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.0, -1.0),
                          Complex(0.0, 2.0));
  EXPECT_THROW(stable_projection(real_eig, 1e-10, 2), GuardError);
  Matrix three_up = diag4(Complex(0.0, 1.0), Complex(0.0, 2.0), Complex(0.0, 3.0),
                          Complex(0.0, -1.0));
  EXPECT_THROW(stable_projection(three_up, 1e-10, 2), GuardError);
}

TEST(PoissonKernel, DirichletLaplacianClosedForm) {
  BVSystem sys = dirichlet_laplacian(2);
  for (Complex lam : {Complex(1.0, 0.0), Complex(100.0, 50.0)}) {
    for (double xp : {0.0, 1.5, -4.0}) {
      PoissonKernel ker = build_poisson_kernel(sys, FrequencyPoint{{xp}, lam});
      Complex mu = std::sqrt(1.0 + lam + xp * xp);
      for (double x1 : {0.0, 0.3, 2.0}) {
        Complex want = std::exp(-mu * x1);
        EXPECT_NEAR(std::abs(ker.eval(0, x1)(0, 0) - want), 0.0, 1e-12 * std::abs(want) + 1e-14);
        // D_{x1} = -i d/dx1 brings down +i mu.
        Complex want1 = Complex(0.0, 1.0) * mu * want;
        EXPECT_NEAR(std::abs(ker.eval(0, x1, 1)(0, 0) - want1), 0.0, 1e-11);
      }
    }
  }
}

TEST(PoissonKernel, NeumannLaplacianClosedForm) {
  BVSystem sys = neumann_laplacian(2);
  const Complex lam(4.0, 1.0);
  const double xp = 0.8;
  PoissonKernel ker = build_poisson_kernel(sys, FrequencyPoint{{xp}, lam});
  Complex mu = std::sqrt(1.0 + lam + xp * xp);
  // B = D_1 and v = c e^{-mu x1}: D_1 v(0) = i mu c = g, so c = 1/(i mu).
  for (double x1 : {0.0, 0.7}) {
    Complex want = std::exp(-mu * x1) / (Complex(0.0, 1.0) * mu);
    EXPECT_NEAR(std::abs(ker.eval(0, x1)(0, 0) - want), 0.0, 1e-12);
  }
}

TEST(PoissonKernel, ClampedBilaplacianMatchesTheTwoRootFormula) {
  BVSystem sys = clamped_bilaplacian(2);
  const Complex lam(2.0, 1.0);
  const double xp = 0.5, q = xp * xp;
  // Roots of (tau^2 + q)^2 = -(1+lambda) with positive imaginary part.
  Complex s = std::sqrt(Complex(0.0, 1.0)) * std::pow(1.0 + lam, 0.25);
  auto up = [](Complex z) { return z.imag() > 0.0 ? z : -z; };
  Complex ta = up(std::sqrt(s * s - q)), tb = up(std::sqrt(-s * s - q));
  PoissonKernel ker = build_poisson_kernel(sys, FrequencyPoint{{xp}, lam});
  // Dirichlet data (g0, 0): v = (tb e^{i ta x} - ta e^{i tb x}) g0/(tb - ta).
  for (double x1 : {0.0, 0.4, 1.1}) {
    Complex want =
        (tb * std::exp(Complex(0.0, 1.0) * ta * x1) - ta * std::exp(Complex(0.0, 1.0) * tb * x1)) /
        (tb - ta);
    EXPECT_NEAR(std::abs(ker.eval(0, x1)(0, 0) - want), 0.0, 1e-10);
  }
  // D_1-data column: v = (e^{i ta x} - e^{i tb x}) g1/(ta - tb).
  for (double x1 : {0.0, 0.6}) {
    Complex want = (std::exp(Complex(0.0, 1.0) * ta * x1) - std::exp(Complex(0.0, 1.0) * tb * x1)) /
                   (ta - tb);
    EXPECT_NEAR(std::abs(ker.eval(1, x1)(0, 0) - want), 0.0, 1e-10);
  }
}

TEST(PoissonKernel, BoundaryConditionsHoldAtZero) {
  BVSystem sys = clamped_bilaplacian(2);
  PoissonKernel ker = build_poisson_kernel(sys, FrequencyPoint{{1.2}, Complex(7.0, -3.0)});
  // B_0 = id, B_1 = D_1: columns reproduce the data blocks at x1 = 0.
  EXPECT_NEAR(std::abs(ker.eval(0, 0.0, 0)(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-11);
  EXPECT_NEAR(std::abs(ker.eval(0, 0.0, 1)(0, 0)), 0.0, 1e-11);
  EXPECT_NEAR(std::abs(ker.eval(1, 0.0, 0)(0, 0)), 0.0, 1e-11);
  EXPECT_NEAR(std::abs(ker.eval(1, 0.0, 1)(0, 0) - Complex(1.0, 0.0)), 0.0, 1e-11);
}

TEST(PoissonKernel, DiagonalSystemDecouples) {
  BVSystem sys = diagonal_laplacians(2, {1.0, 3.0});
  const Complex lam(5.0, 2.0);
  const double xp = -0.9;
  PoissonKernel ker = build_poisson_kernel(sys, FrequencyPoint{{xp}, lam});
  Matrix K = ker.eval(0, 0.8);
  EXPECT_NEAR(std::abs(K(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(K(1, 0)), 0.0, 1e-12);
  Complex mu0 = std::sqrt(1.0 + lam + xp * xp);
  Complex mu1 = std::sqrt((1.0 + lam + 3.0 * xp * xp) / 3.0);
  EXPECT_NEAR(std::abs(K(0, 0) - std::exp(-mu0 * 0.8)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(K(1, 1) - std::exp(-mu1 * 0.8)), 0.0, 1e-12);
}

TEST(PoissonKernel, LopatinskiiGuardFiresOnTheBadSide) {
  // With the model shift the Cauchy-Riemann row i(sqrt(1+lambda+q) + xi_2)
  // vanishes exactly at lambda = -1, xi_2 < 0.
  BVSystem sys = laplacian_system(2, cauchy_riemann_op(2));
  EXPECT_THROW(build_poisson_kernel(sys, FrequencyPoint{{-2.0}, Complex(-1.0, 0.0)}),
               GuardError);
  EXPECT_NO_THROW(build_poisson_kernel(sys, FrequencyPoint{{2.0}, Complex(-1.0, 0.0)}));
}

TEST(TwoPath, RootsRouteMatchesTheKernel) {
  BVSystem sys = clamped_bilaplacian(2);
  FrequencyPoint fp{{0.7}, Complex(3.0, 2.0)};
  PoissonKernel ker = build_poisson_kernel(sys, fp);
  std::vector<double> x1s{0.0, 0.25, 1.0, 2.5};
  for (int j = 0; j < 2; ++j) {
    std::vector<Complex> ref = kernel_column_by_roots(sys, fp, j, x1s);
    for (size_t i = 0; i < x1s.size(); ++i)
      EXPECT_NEAR(std::abs(ker.eval(j, x1s[i])(0, 0) - ref[i]), 0.0, 1e-10);
  }
}

TEST(TwoPath, OdeRouteMatchesTheKernel) {
  BVSystem sys = dirichlet_laplacian(2);
  FrequencyPoint fp{{1.1}, Complex(2.0, 1.0)};
  PoissonKernel ker = build_poisson_kernel(sys, fp);
  std::vector<double> x1s{0.0, 0.5, 1.5, 3.0};
  std::vector<Complex> ref = kernel_column_by_ode(sys, fp, 0, x1s);
  for (size_t i = 0; i < x1s.size(); ++i)
    EXPECT_NEAR(std::abs(ker.eval(0, x1s[i])(0, 0) - ref[i]), 0.0, 1e-8);
}

TEST(KernelEstimates, WeightedSupsAreFiniteAndComparable) {
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<FrequencyPoint> grid;
  for (double xp : {0.0, 1.0, 4.0})
    for (double lm : {1.0, 100.0}) grid.push_back({{xp}, Complex(lm, 0.5 * lm)});
  std::vector<KernelDerivSpec> specs;
  for (int r = 0; r <= 1; ++r)
    for (int k = 0; k <= 1; ++k) specs.push_back({0, r, k, MultiIndex{0}, 0, 0});
  KernelEstimateTable t = build_kernel_estimates(sys, grid, specs);
  EXPECT_GT(t.c, 0.0);
  for (int si = 0; si < static_cast<int>(specs.size()); ++si) {
    for (int g = 0; g < t.values.cols(); ++g) {
      EXPECT_TRUE(std::isfinite(t.values(si, g)));
      EXPECT_GT(t.values(si, g), 0.0);
    }
    EXPECT_LT(t.spread(si), 100.0);
  }
}

TEST(KernelEstimates, TangentialDerivativeColumnsStayBounded) {
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<FrequencyPoint> grid{{{0.5}, Complex(1.0, 0.0)}, {{2.0}, Complex(50.0, 20.0)}};
  std::vector<KernelDerivSpec> specs{{0, 0, 0, MultiIndex{1}, 0, 0},
                                     {0, 0, 0, MultiIndex{0}, 1, 0}};
  KernelEstimateTable t = build_kernel_estimates(sys, grid, specs);
  for (int si = 0; si < 2; ++si)
    for (int g = 0; g < t.values.cols(); ++g) EXPECT_TRUE(std::isfinite(t.values(si, g)));
}
