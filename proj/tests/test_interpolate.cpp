#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "onesided/interpolate.hpp"

using namespace onesided;

TEST(Interpolate, Exponents) {
  const auto x = interpolation_exponents(2.0, 2.0, 0.5);
  EXPECT_DOUBLE_EQ(x.p, 2.0);
  EXPECT_DOUBLE_EQ(x.e0, 0.5);
  EXPECT_DOUBLE_EQ(x.e1, 0.5);
  // 1/p = theta/p0 + (1-theta)/p1
  const auto y = interpolation_exponents(2.0, 6.0, 0.25);
  EXPECT_NEAR(1.0 / y.p, 0.25 / 2.0 + 0.75 / 6.0, 1e-15);
  EXPECT_NEAR(y.e0 + y.e1, 1.0, 1e-15);
}

TEST(Interpolate, CatalogWeightsCombineExponents) {
  InterpolationEndpoints e;
  e.p0 = 2.0;
  e.p1 = 4.0;
  e.u0 = WeightSpec::power(1.0);
  e.u1 = WeightSpec::power(-0.5);
  e.v0 = WeightSpec::exponential(1.0);
  e.v1 = WeightSpec::exponential(-2.0, 3.0);
  e.c0 = 4.0;
  e.c1 = 9.0;
  e.theta = 0.5;
  const auto iw = interpolate_weights(e);
  const auto x = interpolation_exponents(2.0, 4.0, 0.5);
  EXPECT_NEAR(iw.u.alpha(), x.e0 * 1.0 + x.e1 * -0.5, 1e-15);
  EXPECT_NEAR(iw.v.rate(), x.e0 * 1.0 + x.e1 * -2.0, 1e-15);
  EXPECT_NEAR(iw.v.scale(), std::pow(3.0, x.e1), 1e-15);
  EXPECT_NEAR(iw.c_bound, 6.0, 1e-14);
}

TEST(Interpolate, UnweightedMultiplierIsSupOfModulus) {
  const Grid g(-4.0, 4.0, 512);
  const auto m = SampledFunction::from(g, [](double x) { return x < 0.0 ? 0.5 : 2.0; });
  InterpolationEndpoints e;
  e.p0 = 2.0;
  e.p1 = 3.0;
  e.theta = 0.3;
  const auto rep = verify_on_multiplier(m, e);
  EXPECT_DOUBLE_EQ(rep.exact_norm, 2.0);
  EXPECT_DOUBLE_EQ(rep.c0, 2.0);
  EXPECT_DOUBLE_EQ(rep.c1, 2.0);
  EXPECT_TRUE(rep.pass);
}

TEST(Interpolate, ExactNormMatchesDirectOracle) {
  // ||g f||_{L^p(u)} / ||f||_{L^p(v)} is sup |g| (u/v)^{1/p}; computed here from point values.
  const Grid g(-4.0, 4.0, 512);
  const auto m = SampledFunction::from(g, [](double x) { return 1.0 + std::sin(x); });
  InterpolationEndpoints e;
  e.p0 = 1.5;
  e.p1 = 5.0;
  e.u0 = WeightSpec::exponential(0.5);
  e.v0 = WeightSpec::exponential(-0.5);
  e.u1 = WeightSpec::constant(2.0);
  e.v1 = WeightSpec::exponential(1.0);
  e.theta = 0.6;
  const auto rep = verify_on_multiplier(m, e);
  double c0 = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    c0 = std::max(c0, (1.0 + std::sin(x)) * std::pow(std::exp(x), 1.0 / 1.5));
  }
  EXPECT_NEAR(rep.c0, c0, 1e-12 * c0);
  EXPECT_LE(rep.exact_norm, rep.c_bound * (1.0 + 1e-9));
}

TEST(Interpolate, RandomInstancesSatisfyTheBound) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Grid g(-4.0, 4.0, 512);
  for (int k = 0; k < 50; ++k) {
    auto rw = [&] { return WeightSpec::powexp(-0.9 + 2.9 * u(rng), -2.0 + 4.0 * u(rng), 0.5 + 1.5 * u(rng)); };
    InterpolationEndpoints e;
    e.p0 = 1.1 + 4.9 * u(rng);
    e.p1 = 1.1 + 4.9 * u(rng);
    e.u0 = rw();
    e.v0 = rw();
    e.u1 = rw();
    e.v1 = rw();
    e.theta = 0.05 + 0.9 * u(rng);
    const double lvl = 2.0 * u(rng);
    const auto m = SampledFunction::from(g, [&](double x) { return x < 1.0 ? lvl : 1.0; });
    EXPECT_TRUE(verify_on_multiplier(m, e).pass) << k;
  }
}

TEST(Interpolate, Validation) {
  InterpolationEndpoints e;
  e.theta = 0.0;
  EXPECT_THROW(e.validate(), DomainError);
  e.theta = 0.5;
  e.p0 = 1.0;
  EXPECT_THROW(e.validate(), DomainError);
  e.p0 = 2.0;
  e.u0 = WeightSpec::power(-1.0);
  const Grid odd(-1.0, 1.0, 3);
  EXPECT_THROW((void)verify_on_multiplier(SampledFunction::constant(odd, 1.0), e), DomainError);
}

TEST(Interpolate, DecayCombination) {
  const auto c = weighted_decay_combination({1.0, 0.25}, {4.0, 1.0}, 0.5);
  EXPECT_DOUBLE_EQ(c[0], 2.0);
  EXPECT_DOUBLE_EQ(c[1], 0.5);
  EXPECT_THROW((void)weighted_decay_combination({1.0}, {1.0, 2.0}, 0.5), ConfigError);
  EXPECT_THROW((void)weighted_decay_combination({0.0}, {1.0}, 0.5), DomainError);
}
