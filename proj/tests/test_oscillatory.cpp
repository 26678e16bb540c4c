#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "onesided/maximal.hpp"
#include "onesided/oscillatory.hpp"

using namespace onesided;

namespace {

struct Gauss {
  std::vector<double> x, w;  // on [0, 1]
};

Gauss gauss_legendre(int m) {
  Gauss g;
  for (int k = 1; k <= m; ++k) {
    double z = std::cos(std::numbers::pi * (k - 0.25) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    g.x.push_back(0.5 * (1.0 - z));
    g.w.push_back(1.0 / ((1.0 - z * z) * dp * dp));
  }
  return g;
}

// Plus side: sum over cells [x_i + k h, x_i + (k+1) h], k >= eps, of the
// integral of the linear interpolant of K(x - y) f(y) against e^{i P(x, y)},
// by Gauss-Legendre on each cell. Exact in phase for y-linear P.
std::vector<Complex> oracle_plus(const SampledFunction& f, const KernelSpec& k, const PolynomialPhase& p,
                                 std::size_t eps) {
  static const Gauss gl = gauss_legendre(20);
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = f.node(i);
    Complex acc{};
    for (std::size_t c = i + eps; c + 1 < n; ++c) {
      const double ya = f.node(c), yb = f.node(c + 1);
      const Complex ga = k(x - ya) * f[c];
      const Complex gb = k(x - yb) * f[c + 1];
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        const double t = gl.x[q];
        const double y = ya + t * (yb - ya);
        acc += gl.w[q] * ((1.0 - t) * ga + t * gb) * std::polar(1.0, p(x, y)) * (yb - ya);
      }
    }
    out[i] = acc;
  }
  return out;
}

SampledFunction smooth_bump(const Grid& g, double lo, double hi) {
  return SampledFunction::from(g, [=](double x) {
    if (x <= lo || x >= hi) return 0.0;
    const double u = (2.0 * x - lo - hi) / (hi - lo);
    return std::exp(1.0 - 1.0 / (1.0 - u * u)) * (1.0 + 0.3 * x);
  });
}

}  // namespace

TEST(Filon, WeightsMatchQuadratureAcrossTheSeriesSwitch) {
  const auto gl = gauss_legendre(30);
  for (const double th : {0.0, 1e-6, 0.2, 0.4999, 0.5, 0.5001, 1.0, 3.0, -2.0, 40.0}) {
    Complex w0{}, w1{};
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const Complex e = std::polar(1.0, th * gl.x[q]);
      w0 += gl.w[q] * (1.0 - gl.x[q]) * e;
      w1 += gl.w[q] * gl.x[q] * e;
    }
    const auto [a, b] = filon_weights(th);
    EXPECT_NEAR(std::abs(a - w0), 0.0, th > 10 ? 1e-12 : 1e-14) << th;
    EXPECT_NEAR(std::abs(b - w1), 0.0, th > 10 ? 1e-12 : 1e-14) << th;
  }
  const auto [a0, b0] = filon_weights(0.0);
  EXPECT_EQ(a0, Complex(0.5, 0.0));
  EXPECT_EQ(b0, Complex(0.5, 0.0));
}

TEST(Oscillatory, LinearPhaseMatchesGaussOracle) {
  const Grid g(-3.0, 3.0, 241);
  const auto f = smooth_bump(g, -1.5, 2.0);
  const auto k = KernelSpec::oscillating_log();
  for (const double a : {1.0, 25.0, 400.0}) {
    const PolynomialPhase p({{{1, 1}, a}, {{2, 0}, 0.7}, {{0, 1}, -1.0}});
    const auto got = oscillatory_one_sided(f, k, p, {}).values;
    const auto want = oracle_plus(f, k, p, 1);
    double scale = 0.0;
    for (const auto& z : want) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < g.n; ++i) ASSERT_NEAR(std::abs(got[i] - want[i]), 0.0, 1e-11 * scale) << a << " " << i;
  }
}

TEST(Oscillatory, CurvedPhaseConvergesToOracle) {
  // y^2 phases take the general path; the error is bounded by the secant rule.
  const Grid g(-2.0, 2.0, 161);
  const auto f = smooth_bump(g, -1.0, 1.5);
  const auto k = KernelSpec::oscillating_log();
  const PolynomialPhase p = PolynomialPhase::monomial(3.0, 1, 2);
  const auto got = oscillatory_one_sided(f, k, p, {}).values;
  const auto want = oracle_plus(f, k, p, 1);
  double scale = 0.0, err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    scale = std::max(scale, std::abs(want[i]));
    err = std::max(err, std::abs(got[i] - want[i]));
  }
  EXPECT_LT(err, 1e-3 * scale);
}

TEST(Oscillatory, ZeroPhaseIsTheTrapezoidAndSingularBitwise) {
  const Grid g(-2.0, 2.0, 101);
  const auto f = smooth_bump(g, -1.0, 1.0);
  const auto k = KernelSpec::oscillating_log();
  const auto a = oscillatory_one_sided(f, k, PolynomialPhase{}, {}).values;
  const auto b = singular_one_sided(f, k, {}).values;
  for (std::size_t i = 0; i < g.n; ++i) ASSERT_EQ(a[i], b[i]);
  const auto want = oracle_plus(f, k, PolynomialPhase{}, 1);
  for (std::size_t i = 0; i < g.n; ++i) ASSERT_NEAR(std::abs(a[i] - want[i]), 0.0, 1e-12);
}

TEST(Singular, IndicatorClosedForm) {
  // T chi_[1,2] (0) = integral_1^2 sin(ln y)/(-y) dy = cos(ln 2) - 1.
  const Grid g(-4.0, 4.0, 8001);
  const auto chi = SampledFunction::from(g, [](double x) { return x >= 1.0 && x <= 2.0 ? 1.0 : 0.0; });
  const auto t = singular_one_sided(chi, KernelSpec::oscillating_log(), {}).values;
  const std::size_t zero = g.nearest(0.0);
  ASSERT_EQ(g.node(zero), 0.0);
  EXPECT_NEAR(t[zero].real(), std::cos(std::numbers::ln2) - 1.0, 2.0 * g.spacing());
}

TEST(Singular, MinusSideIsReflectedPlusSide) {
  // K_minus(t) = -K_plus(-t), so T_minus f = -(T_plus f~)~ with f~(y) = f(-y).
  const Grid g(-3.0, 3.0, 301);
  const auto f = smooth_bump(g, -2.0, 1.0);
  const auto m = singular_one_sided(f, KernelSpec::oscillating_log(Side::minus), {}).values;
  const auto p = singular_one_sided(f.reflected(), KernelSpec::oscillating_log(), {}).values.reflected();
  for (std::size_t i = 0; i < g.n; ++i) ASSERT_NEAR(std::abs(m[i] + p[i]), 0.0, 1e-14);
}

TEST(Oscillatory, PvValidationAndRefinement) {
  const Grid g(-2.0, 2.0, 64);
  const auto f = smooth_bump(g, -1.0, 1.0);
  const auto k = KernelSpec::oscillating_log();
  EXPECT_THROW((void)singular_one_sided(f, k, {0, 0}), ConfigError);
  EXPECT_THROW((void)singular_one_sided(f, k, {63, 0}), ConfigError);
  const auto r = oscillatory_one_sided(f, k, PolynomialPhase::monomial(1.0, 1, 1), {1, 2});
  EXPECT_GT(r.pv_change, 0.0);
  EXPECT_TRUE(std::isfinite(r.pv_change));
}

TEST(Oscillatory, ScalingIdentityIsExactOnMatchedGrids) {
  const Grid g(-8.0, 8.0, 1024);
  const auto f = smooth_bump(g, -2.0, 2.0);
  const auto k = KernelSpec::oscillating_log();
  EXPECT_LE(scaling_identity_check(f, k, PolynomialPhase::monomial(4.0, 1, 1), {}), 1e-12);
  EXPECT_LE(scaling_identity_check(f, k, PolynomialPhase::monomial(8.0, 2, 1), {}), 1e-12);
  EXPECT_LE(scaling_identity_check(f, k, PolynomialPhase::monomial(27.0, 2, 1), {}), 1e-10);
  EXPECT_THROW((void)scaling_identity_check(f, k, PolynomialPhase{}, {}), DomainError);
}

TEST(Dyadic, PiecesSumToTheTruncatedOperator) {
  const Grid g(-8.0, 8.0, 1024);
  const auto f = smooth_bump(g, -2.0, 2.0);
  const auto k = KernelSpec::oscillating_log();
  const auto p = PolynomialPhase::monomial(1.0, 1, 1);
  std::vector<std::vector<Complex>> pieces;
  for (int j = 0; j <= 4; ++j) {
    const auto v = dyadic_piece(f, k, p, j, {}).values.values();
    pieces.emplace_back(v.begin(), v.end());
  }
  for (int jj = 0; jj <= 4; ++jj) {
    const auto direct = oscillatory_on_range(f, k, p, 1, dyadic_offset(jj, g.spacing()));
    for (std::size_t i = 0; i < g.n; ++i) {
      Complex s{};
      for (int j = 0; j <= jj; ++j) s += pieces[j][i];
      ASSERT_NEAR(std::abs(s - direct[i]), 0.0, 1e-12);
    }
  }
  // Far pieces leave the window.
  const auto far = dyadic_piece(f, k, p, 6, {});
  EXPECT_FALSE(far.in_window);
  EXPECT_THROW((void)dyadic_piece(f, k, p, -1, {}), DomainError);
}

TEST(Dyadic, PointwiseBoundByMaximalFunction) {
  const Grid g(-8.0, 8.0, 2048);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto f = SampledFunction::from(g, [&](double x) { return std::abs(x) < 3.0 ? u(rng) : 0.0; });
  const auto k = KernelSpec::oscillating_log();
  const auto m = m_plus(f);
  for (int j = 1; j <= 3; ++j) {
    const auto t = dyadic_piece(f, k, PolynomialPhase::monomial(1.0, 1, 1), j, {}).values;
    for (std::size_t i = 0; i < g.n; ++i) ASSERT_LE(std::abs(t[i]), 2.0 * k.size_const * m[i].real() * (1 + 1e-12));
  }
}
