#include <gtest/gtest.h>

#include <cmath>

#include "onesided/weight_spec.hpp"

using namespace onesided;

TEST(WeightSpec, FormTagsAndParameterLayout) {
  EXPECT_EQ(WeightSpec::constant(2.0).form(), WeightForm::constant);
  EXPECT_EQ(WeightSpec::power(0.5).form(), WeightForm::power);
  EXPECT_EQ(WeightSpec::exponential(-1.0).form(), WeightForm::exponential);
  EXPECT_EQ(WeightSpec::powexp(0.3, 1.0, 2.0).form(), WeightForm::powexp);
  EXPECT_EQ(WeightSpec::powexp(0.3, 1.0, 2.0).params(), (std::vector<double>{0.3, 1.0, 2.0}));
  EXPECT_EQ(WeightSpec::power(0.5, 3.0).params(), (std::vector<double>{0.5, 3.0}));
  EXPECT_EQ(WeightSpec::powexp(0.0, 0.0).form(), WeightForm::constant);
  EXPECT_EQ(weight_form_from_string("powexp"), WeightForm::powexp);
  EXPECT_THROW(weight_form_from_string("gaussian"), ConfigError);
  EXPECT_THROW(WeightSpec::constant(0.0), DomainError);
  EXPECT_THROW(WeightSpec::power(NAN), DomainError);
}

TEST(WeightSpec, Labels) {
  EXPECT_EQ(WeightSpec::constant().label(), "1");
  EXPECT_EQ(WeightSpec::power(0.5).label(), "|x|^0.5");
  EXPECT_EQ(WeightSpec::exponential(1.0).label(), "e^(1x)");
  EXPECT_EQ(WeightSpec::powexp(0.3, 1.0, 2.0).label(), "2*|x|^0.3*e^(1x)");
}

TEST(WeightSpec, PointValues) {
  const auto w = WeightSpec::powexp(0.5, -2.0, 3.0);
  EXPECT_DOUBLE_EQ(w.value(1.7), 3.0 * std::sqrt(1.7) * std::exp(-3.4));
  EXPECT_DOUBLE_EQ(w.value(-0.25), 3.0 * 0.5 * std::exp(0.5));
}

TEST(WeightSpec, CellAverageAtTheSingularity) {
  // Odd grid: node 0 averages |x|^alpha over [-s/2, s/2].
  const Grid odd(-1.0, 1.0, 3);
  const double half = 0.5;
  EXPECT_DOUBLE_EQ(WeightSpec::power(0.5).realize(odd).values[1], std::pow(half, 0.5) / 1.5);
  EXPECT_DOUBLE_EQ(WeightSpec::power(-0.5).realize(odd).values[1], std::pow(half, -0.5) / 0.5);
  EXPECT_TRUE(std::isinf(WeightSpec::power(-1.0).realize(odd).values[1]));
  EXPECT_TRUE(std::isinf(WeightSpec::power(-1.5).realize(odd).values[1]));
  EXPECT_DOUBLE_EQ(WeightSpec::power(0.5).realize(odd).values[2], 1.0);
  // Even grid: nodes +-s/2 average over [0, s] and [-s, 0], giving s^alpha/(alpha+1).
  const Grid even(-1.0, 1.0, 4);
  const double s = even.spacing();
  const auto r = WeightSpec::power(0.5).realize(even).values;
  EXPECT_NEAR(r[1], std::pow(s, 0.5) / 1.5, 1e-15);
  EXPECT_EQ(r[1], r[2]);
}

TEST(WeightSpec, CatalogAlgebra) {
  const auto a = WeightSpec::powexp(0.5, 1.0, 2.0);
  const auto b = WeightSpec::power(-0.25, 0.5);
  for (const double x : {-2.0, -0.3, 0.7, 3.0}) {
    EXPECT_NEAR(a.pow(-1.5).value(x), std::pow(a.value(x), -1.5), 1e-13 * std::pow(a.value(x), -1.5));
    EXPECT_NEAR(a.times(b).value(x), a.value(x) * b.value(x), 1e-13 * a.value(x) * b.value(x));
    EXPECT_DOUBLE_EQ(a.reflected().value(x), a.value(-x));
    EXPECT_NEAR(a.dilated(3.0).value(x), a.value(3.0 * x), 1e-13 * a.value(3.0 * x));
  }
  EXPECT_THROW((void)a.dilated(0.0), DomainError);
}

TEST(WeightSpec, SampledWeights) {
  const Grid g(-1.0, 1.0, 5);
  const auto sf = SampledFunction::from(g, [](double x) { return 2.0 + x; });
  const auto w = WeightSpec::sampled(sf);
  EXPECT_TRUE(w.is_sampled());
  EXPECT_EQ(w.form(), WeightForm::sampled);
  EXPECT_EQ(w.realize(g).values, (std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0}));
  EXPECT_THROW(WeightSpec::sampled(SampledFunction::zeros(g)), DomainError);
  const auto other = WeightSpec::sampled(SampledFunction::constant(Grid(0.0, 1.0, 5), 1.0));
  EXPECT_THROW((void)w.times(other), GridError);
  // Mixed product realizes the catalog factor on the sampled grid.
  const auto m = w.times(WeightSpec::exponential(1.0));
  EXPECT_DOUBLE_EQ(m.realize(g).values[0], std::exp(-1.0));
  // Dilation by lambda puts the same samples on the grid x_i / lambda.
  const auto d = w.dilated(2.0);
  EXPECT_EQ(d.samples().grid(), Grid(-0.5, 0.5, 5));
  EXPECT_EQ(d.samples()[3], sf[3]);
  const auto r = w.reflected();
  EXPECT_EQ(r.samples()[0].real(), 3.0);
}
