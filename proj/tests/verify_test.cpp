#include <gtest/gtest.h>

#include "hslab/model_systems.hpp"
#include "hslab/verify.hpp"

using namespace hslab;

namespace {

RatioReport synthetic(std::vector<double> ratios, double bound) {
  RatioReport rep;
  rep.bound = bound;
  for (double r : ratios) rep.samples.push_back({"{}", r, 1.0, r});
  return rep;
}

EmbeddingSpecs embedding_specs() {
  EmbeddingSpecs sp;
  sp.normal = normal_axis(33, 12.0);
  sp.taxes = {tangential_axis(16, 4.0 * kPi)};
  sp.bound = 5.0;
  return sp;
}

TraceSpecs trace_specs() {
  TraceSpecs sp;
  sp.normal = normal_axis(33, 12.0);
  sp.taxes = {tangential_axis(32, 4.0 * kPi), time_axis(64, 2.0 * kPi)};
  sp.bound = 6.0;
  return sp;
}

IntersectionSpecs intersection_specs() {
  IntersectionSpecs sp;
  sp.axes = {tangential_axis(16, 4.0 * kPi), time_axis(16, 2.0 * kPi)};
  sp.bound = 4.0;
  return sp;
}

KernelMappingSpecs kernel_specs() {
  KernelMappingSpecs sp;
  sp.normal = normal_axis(33, 12.0);
  sp.taxes = {tangential_axis(64, 2.0 * kPi)};
  sp.bound = 10.0;
  return sp;
}

PardepSpecs pardep_specs() {
  PardepSpecs sp;
  sp.normal = normal_axis(33, 12.0);
  sp.taxes = {tangential_axis(16, 4.0 * kPi)};
  sp.bound = 50.0;
  return sp;
}

}  // namespace

TEST(RatioReport, PassRequiresEverySampleInsideTheBand) {
  EXPECT_TRUE(synthetic({0.5, 1.0, 1.9}, 2.0).pass());
  EXPECT_FALSE(synthetic({0.5, 2.1}, 2.0).pass());
  EXPECT_FALSE(synthetic({0.4, 1.0}, 2.0).pass());
  EXPECT_FALSE(synthetic({}, 2.0).pass());
  EXPECT_FALSE(synthetic({1.0, std::numeric_limits<double>::infinity()}, 2.0).pass());
  EXPECT_FALSE(synthetic({1.0, std::nan("")}, 2.0).pass());
}

TEST(RatioReport, SpreadIsMaxOverMin) {
  RatioReport rep = synthetic({0.5, 1.0, 2.0}, 4.0);
  EXPECT_DOUBLE_EQ(rep.min_ratio(), 0.5);
  EXPECT_DOUBLE_EQ(rep.max_ratio(), 2.0);
  EXPECT_DOUBLE_EQ(rep.spread(), 4.0);
  EXPECT_TRUE(std::isinf(synthetic({}, 2.0).spread()));
  EXPECT_TRUE(std::isinf(synthetic({0.0, 1.0}, 2.0).spread()));
}

TEST(LambdaGrid, ArgMajorLayout) {
  std::vector<Complex> g = lambda_grid({1.0, 10.0}, {0.0, kPi / 2.0});
  ASSERT_EQ(g.size(), 4u);
  EXPECT_NEAR(std::abs(g[0] - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[1] - Complex(10.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[2] - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g[3] - Complex(0.0, 10.0)), 0.0, 1e-15);
}

TEST(Corpus, SeededFieldsAreBitReproducible) {
  Grid g{tangential_axis(16, 2.0 * kPi)};
  Anisotropy an = Anisotropy::isotropic(1);
  DiscreteField a = random_band_field(g, 1, an, 2, 42);
  DiscreteField b = random_band_field(g, 1, an, 2, 42);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(a.values[i], b.values[i]);
  DiscreteField c = random_band_field(g, 1, an, 2, 43);
  double d = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - c.values[i]));
  EXPECT_GT(d, 1e-6);
}

TEST(Embedding, HoldsOnTheSharpLineAndReproduces) {
  EmbeddingSpecs sp = embedding_specs();
  RatioReport a = check_embedding(1.2, 0.5, 0.95, 0.0, sp);
  EXPECT_TRUE(a.pass()) << "spread " << a.spread() << " max " << a.max_ratio();
  EXPECT_GT(static_cast<int>(a.samples.size()), 10);
  RatioReport b = check_embedding(1.2, 0.5, 0.95, 0.0, sp);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].ratio, b.samples[i].ratio);
    EXPECT_EQ(a.samples[i].params, b.samples[i].params);
  }
  sp.seed = 999;
  RatioReport c = check_embedding(1.2, 0.5, 0.95, 0.0, sp);
  EXPECT_NE(a.max_ratio(), c.max_ratio());
}

TEST(Embedding, RefusesParametersOffTheSharpLine) {
  EmbeddingSpecs sp = embedding_specs();
  EXPECT_THROW(check_embedding(1.2, 0.5, 0.95, 0.6, sp), InputError);
  EXPECT_THROW(check_embedding(0.9, 0.5, 0.8, 0.0, sp), InputError);
}

TEST(Embedding, NegativeControlBreaksTheBound) {
  EmbeddingSpecs sp = embedding_specs();
  sp.enforce_pre = false;
  RatioReport rep = check_embedding(1.2, 0.5, 2.2, 0.0, sp);
  EXPECT_FALSE(rep.pass()) << "max ratio " << rep.max_ratio();
}

TEST(Trace, EstimateHoldsForTimeDerivativeTraces) {
  TraceSpecs sp = trace_specs();
  RatioReport rep = check_trace_estimate(MultiIndex{1, 0}, 0.3, 2.0, sp);
  EXPECT_TRUE(rep.pass()) << "spread " << rep.spread() << " max " << rep.max_ratio()
                          << " min " << rep.min_ratio();
  EXPECT_GT(static_cast<int>(rep.samples.size()), 5);
}

TEST(Trace, RefusalsAndNegativeControl) {
  TraceSpecs sp = trace_specs();
  EXPECT_THROW(check_trace_estimate(MultiIndex{0, 0}, 0.6, 2.0, sp), InputError);
  EXPECT_THROW(check_trace_estimate(MultiIndex{3, 0}, 0.3, 2.0, sp), InputError);
  sp.target_shift = 1.5;
  RatioReport rep = check_trace_estimate(MultiIndex{1, 0}, 0.3, 2.0, sp);
  EXPECT_FALSE(rep.pass()) << "max ratio " << rep.max_ratio();
}

TEST(Intersection, RepresentationIsTwoSided) {
  IntersectionSpecs sp = intersection_specs();
  RatioReport rep = check_intersection_rep(0.8, 2.0, sp);
  EXPECT_TRUE(rep.pass()) << "spread " << rep.spread() << " max " << rep.max_ratio()
                          << " min " << rep.min_ratio();
  IntersectionSpecs td;
  td.axes = {tangential_axis(8, 16.0 * kPi), time_axis(128, 2.0 * kPi)};
  td.bound = 4.0;
  td.target_shift = -1.5;
  RatioReport bad = check_intersection_rep(0.8, 2.0, td);
  EXPECT_FALSE(bad.pass()) << "ratios [" << bad.min_ratio() << ", " << bad.max_ratio() << "]";
}

TEST(KernelMapping, BoundedAtTheMatchedPairing) {
  KernelMappingSpecs sp = kernel_specs();
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<Complex> lams = lambda_grid({1.0, 100.0}, {0.0, kPi / 3.0});
  RatioReport rep = check_kernel_mapping(sys, lams, 1.5, sp);
  EXPECT_TRUE(rep.pass()) << "spread " << rep.spread() << " max " << rep.max_ratio()
                          << " min " << rep.min_ratio();
  sp.boundary_shift = 1.0;
  RatioReport bad = check_kernel_mapping(sys, lams, 1.5, sp);
  EXPECT_FALSE(bad.pass()) << "min ratio " << bad.min_ratio();
}

TEST(Pardep, TwoSidedInLambdaAndControlFails) {
  PardepSpecs sp = pardep_specs();
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<Complex> lams = lambda_grid({1.0, 100.0}, {0.0});
  RatioReport rep = check_pardep_estimate(sys, lams, 1.4, 0.4, sp);
  EXPECT_TRUE(rep.pass()) << "spread " << rep.spread() << " max " << rep.max_ratio()
                          << " min " << rep.min_ratio();
  PardepSpecs bad = pardep_specs();
  bad.zero_f = true;
  bad.boundary_shift = 1.0;
  RatioReport ctrl = check_pardep_estimate(sys, lams, 1.4, 0.4, bad);
  EXPECT_FALSE(ctrl.pass()) << "min ratio " << ctrl.min_ratio();
}

TEST(Pardep, RefusesExponentsOutsideTheWindow) {
  PardepSpecs sp = pardep_specs();
  BVSystem sys = dirichlet_laplacian(2);
  std::vector<Complex> lams = {Complex(1.0, 0.0)};
  EXPECT_THROW(check_pardep_estimate(sys, lams, 0.4, 1.4, sp), InputError);
  sp.gamma = 0.0;
  sp.p = 2.0;
  EXPECT_THROW(check_pardep_estimate(sys, lams, 1.4, -0.6, sp), InputError);
}

TEST(SymbolBound, ResolventDecayIsUniformOnRays) {
  SymbolBoundSpecs sp;
  std::vector<MultiIndex> alphas;
  for (const MultiIndex& a : mi_up_to_order(2, 2)) alphas.push_back(a);
  std::vector<Complex> lams = lambda_grid({1.0, 1000.0}, {0.0, kPi / 2.0});
  for (const BVSystem& sys : {dirichlet_laplacian(2), diagonal_laplacians(2, {1.0, 3.0})}) {
    RatioReport rep = check_symbol_bound(sys, lams, alphas, sp);
    EXPECT_TRUE(rep.pass()) << "max " << rep.max_ratio();
    for (const RatioSample& s : rep.samples) EXPECT_TRUE(std::isfinite(s.ratio));
    EXPECT_EQ(rep.samples.size(), lams.size() * 2 * alphas.size());
  }
}
