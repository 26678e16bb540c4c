#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "onesided/grid.hpp"

using namespace onesided;

TEST(Grid, EndpointsAndSpacing) {
  const Grid g(-8.0, 8.0, 4096);
  EXPECT_EQ(g.node(0), -8.0);
  EXPECT_EQ(g.node(4095), 8.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 16.0 / 4095.0);
  EXPECT_THROW(Grid(1.0, 1.0, 10), DomainError);
  EXPECT_THROW(Grid(0.0, 1.0, 1), DomainError);
}

TEST(Grid, MirroredNodesAreExactNegations) {
  for (const std::size_t n : {2u, 7u, 64u, 4096u, 8191u}) {
    const Grid g(-3.25, 11.0, n);
    const Grid m = g.mirrored();
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(m.node(i), -g.node(n - 1 - i)) << "n=" << n << " i=" << i;
  }
}

TEST(Grid, NearestClampsToWindow) {
  const Grid g(0.0, 1.0, 11);
  EXPECT_EQ(g.nearest(-5.0), 0u);
  EXPECT_EQ(g.nearest(0.34), 3u);
  EXPECT_EQ(g.nearest(7.0), 10u);
}

TEST(Grid, ScaledNodesAreDilations) {
  const Grid g(-8.0, 8.0, 4096);
  const Grid s = g.scaled(2.0);
  for (std::size_t i = 0; i < g.n; i += 97) EXPECT_EQ(s.node(i), 2.0 * g.node(i));
}

TEST(SampledFunction, RejectsBadInput) {
  const Grid g(0.0, 1.0, 4);
  EXPECT_THROW(SampledFunction(g, std::vector<Complex>(3)), GridError);
  EXPECT_THROW(SampledFunction(g, std::vector<Complex>(4, Complex(NAN, 0.0))), DomainError);
  const auto a = SampledFunction::zeros(g);
  const auto b = SampledFunction::zeros(Grid(0.0, 2.0, 4));
  EXPECT_THROW((void)(a + b), GridError);
}

TEST(SampledFunction, ReflectionIsAnInvolution) {
  const Grid g(-2.0, 5.0, 101);
  const auto f = SampledFunction::from(g, [](double x) { return std::sin(3.0 * x) + x * x; });
  const auto r = f.reflected();
  EXPECT_EQ(r.x_lo(), -5.0);
  EXPECT_EQ(r.x_hi(), 2.0);
  EXPECT_EQ(r[0], f[100]);
  const auto rr = r.reflected();
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(rr[i], f[i]);
}

TEST(SampledFunction, NonzeroRange) {
  const Grid g(0.0, 1.0, 11);
  const auto f = SampledFunction::from(g, [](double x) { return x > 0.25 && x < 0.65 ? 1.0 : 0.0; });
  EXPECT_EQ(f.nonzero_range(), (std::pair<std::size_t, std::size_t>{3, 6}));
  EXPECT_EQ(SampledFunction::zeros(g).nonzero_range().first, 11u);
}

TEST(Integrate, ExactForPiecewiseLinearAndAdditive) {
  const Grid g(-1.0, 3.0, 401);
  const auto f = SampledFunction::from(g, [](double x) { return 2.0 * x - 1.0; });
  // Antiderivative x^2 - x.
  EXPECT_NEAR(integrate(f, -1.0, 3.0).real(), (9.0 - 3.0) - (1.0 + 1.0), 1e-12);
  std::mt19937_64 rng(7);
  const auto q = SampledFunction::from(g, [&](double) { return static_cast<double>(rng() % 1000) / 999.0; });
  const double whole = integrate(q, -1.0, 3.0).real();
  const double split = integrate(q, -1.0, 0.37).real() + integrate(q, 0.37, 3.0).real();
  EXPECT_NEAR(whole, split, 1e-12);
  EXPECT_THROW((void)integrate(q, -2.0, 0.0), DomainError);
  EXPECT_THROW((void)integrate(q, 1.0, 0.0), DomainError);
}

TEST(Integrate, QuadraticWithinTrapezoidBound) {
  const Grid g(0.0, 1.0, 1001);
  const auto f = SampledFunction::from(g, [](double x) { return x * x; });
  // Trapezoid error for x^2 on [0,1] is exactly h^2 / 6.
  const double h = g.spacing();
  EXPECT_NEAR(integrate(f, 0.0, 1.0).real(), 1.0 / 3.0 + h * h / 6.0, 1e-13);
}

TEST(LpNorm, MatchesClosedForms) {
  const Grid g(0.0, 1.0, 2001);
  const auto one = SampledFunction::constant(g, 1.0);
  EXPECT_NEAR(lp_weighted_norm(one, one, 2.0), 1.0, 1e-14);
  const auto x = SampledFunction::from(g, [](double t) { return t; });
  EXPECT_NEAR(lp_weighted_norm(x, one, 2.0), std::sqrt(1.0 / 3.0), 1e-6);
  const auto w = SampledFunction::constant(g, 4.0);
  EXPECT_NEAR(lp_weighted_norm(one, w, 3.0), std::cbrt(4.0), 1e-13);
  const auto neg = SampledFunction::constant(g, -1.0);
  EXPECT_THROW((void)lp_weighted_norm(one, neg, 2.0), DomainError);
}

TEST(Resample, LinearDataIsReproduced) {
  const Grid g(-1.0, 1.0, 21);
  const auto f = SampledFunction::from(g, [](double x) { return 3.0 * x + 0.5; });
  const auto r = resample(f, -0.5, 0.75, 33);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i].real(), 3.0 * r.node(i) + 0.5, 1e-13);
  EXPECT_THROW((void)resample(f, -2.0, 0.0, 5), DomainError);
  const auto same = resample(f, g);
  for (std::size_t i = 0; i < g.n; ++i) EXPECT_EQ(same[i], f[i]);
}

TEST(ExponentPair, Conjugates) {
  EXPECT_EQ(ExponentPair(2.0).conj(), 2.0);
  EXPECT_EQ(ExponentPair(3.0).conj(), 1.5);
  EXPECT_EQ(ExponentPair(1.5).conj(), 3.0);
  EXPECT_EQ(ExponentPair(2.0).dual_exponent(), -1.0);
  EXPECT_THROW((void)ExponentPair{1.0}, DomainError);
  EXPECT_THROW((void)ExponentPair{INFINITY}, DomainError);
}

namespace {
double direct_trapezoid(const std::vector<double>& v, std::size_t i, std::size_t j, double h) {
  double s = 0.0;
  for (std::size_t k = i; k < j; ++k) s += 0.5 * (v[k] + v[k + 1]);
  return s * h;
}
}  // namespace

TEST(IntervalIntegrals, MatchesDirectSums) {
  std::mt19937_64 rng(11);
  std::vector<double> v(300);
  for (auto& x : v) x = static_cast<double>(rng() % 10000) / 100.0;
  const IntervalIntegrals ii(v, 0.01);
  for (int t = 0; t < 200; ++t) {
    std::size_t i = rng() % 300, j = rng() % 300;
    if (i > j) std::swap(i, j);
    EXPECT_NEAR(ii(i, j), direct_trapezoid(v, i, j, 0.01), 1e-12 * (1.0 + direct_trapezoid(v, i, j, 0.01)));
  }
}

TEST(IntervalIntegrals, InfiniteSamplesPoisonTouchingIntervals) {
  std::vector<double> v(10, 1.0);
  v[4] = INFINITY;
  const IntervalIntegrals ii(v, 1.0);
  EXPECT_TRUE(std::isinf(ii(3, 4)));
  EXPECT_TRUE(std::isinf(ii(4, 5)));
  EXPECT_TRUE(std::isinf(ii(0, 9)));
  EXPECT_DOUBLE_EQ(ii(5, 9), 4.0);
  EXPECT_DOUBLE_EQ(ii(0, 3), 3.0);
}

TEST(IntervalIntegrals, SmallTailIntervalsKeepRelativePrecision) {
  // e^{-2x} on [-8, 8]: near the right edge a short interval is ~1e-15 of the
  // running total from the left.
  const Grid g(-8.0, 8.0, 4096);
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = std::exp(-2.0 * g.node(i));
  const IntervalIntegrals ii(v, g.spacing());
  for (const std::size_t i : {3700u, 3900u, 4000u, 4090u}) {
    const double d = direct_trapezoid(v, i, i + 3, g.spacing());
    EXPECT_NEAR(ii(i, i + 3), d, 1e-13 * d);
  }
}

TEST(IntervalIntegrals, ReversedSamplesGiveMirroredIntervals) {
  std::mt19937_64 rng(5);
  std::vector<double> v(257);
  for (auto& x : v) x = std::exp(static_cast<double>(rng() % 2000) / 100.0 - 10.0);
  const std::vector<double> r(v.rbegin(), v.rend());
  const IntervalIntegrals a(v, 0.125), b(r, 0.125);
  for (int t = 0; t < 300; ++t) {
    std::size_t i = rng() % 257, j = rng() % 257;
    if (i > j) std::swap(i, j);
    ASSERT_EQ(a(i, j), b(256 - j, 256 - i));
  }
}
