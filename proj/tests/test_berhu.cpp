#include <gtest/gtest.h>

#include <random>

#include "l0screen/berhu.hpp"
#include "support.hpp"

using namespace l0screen;
using l0screen::testing::golden_min;

namespace {

// min over z in (0, 1] of x^2/(gamma z) + mu z by dense grid.
double grid_value(double mu, double gamma, double x) {
  if (x == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 1'000'000; ++i) {
    const double z = i * 1e-6;
    best = std::min(best, x * x / (gamma * z) + mu * z);
  }
  return best;
}

double prox_oracle(const BerhuPenalty& pen, double t, double v) {
  double arg = 0.0;
  const double span = std::abs(v) + 1.0;
  golden_min([&](double x) { return t * pen.value(x) + 0.5 * (x - v) * (x - v); },
             -span, span, 300, &arg);
  return arg;
}

}  // namespace

TEST(Berhu, ValueExamples) {
  const BerhuPenalty pen(1.0, 1.0);
  EXPECT_EQ(pen.value(0.0), 0.0);
  EXPECT_NEAR(pen.value(0.5), 1.0, 1e-12);
  EXPECT_NEAR(pen.value(0.5), grid_value(1.0, 1.0, 0.5), 1e-6);
  EXPECT_NEAR(pen.value(2.0), 5.0, 1e-12);
  EXPECT_NEAR(pen.value(2.0), grid_value(1.0, 1.0, 2.0), 1e-6);
}

TEST(Berhu, ValueMatchesGridOracle) {
  for (double mu : {0.1, 1.0, 7.0})
    for (double gamma : {0.05, 1.0, 20.0})
      for (double x : {-3.0, -0.4, 0.01, 0.9, 2.5}) {
        const BerhuPenalty pen(mu, gamma);
        EXPECT_NEAR(pen.value(x), grid_value(mu, gamma, x), 1e-5 * (1 + pen.value(x)))
            << mu << " " << gamma << " " << x;
      }
}

TEST(Berhu, ContinuousAtKnot) {
  const BerhuPenalty pen(2.0, 3.0);
  const double k = pen.knot();
  EXPECT_NEAR(pen.value(k), 2.0 * 2.0, 1e-12);
  EXPECT_NEAR(pen.value(std::nextafter(k, 10.0)), pen.value(k), 1e-12);
}

TEST(Berhu, Convex) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0), th(0.0, 1.0);
  const BerhuPenalty pen(0.7, 1.9);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng), b = u(rng), t = th(rng);
    EXPECT_LE(pen.value(t * a + (1 - t) * b),
              t * pen.value(a) + (1 - t) * pen.value(b) + 1e-12);
  }
}

TEST(Berhu, ProxExamples) {
  const BerhuPenalty pen(1.0, 1.0);
  EXPECT_EQ(pen.prox(0.5, 0.0), 0.0);
  EXPECT_EQ(pen.prox(0.5, 0.5), 0.0);
  EXPECT_NEAR(pen.prox(0.5, 6.0), 3.0, 1e-12);
  EXPECT_NEAR(pen.prox(0.5, -6.0), -3.0, 1e-12);
  EXPECT_NEAR(prox_oracle(pen, 0.5, 6.0), 3.0, 1e-6);
}

TEST(Berhu, ProxMatchesGoldenSection) {
  const double vals[] = {1e-3, 0.05, 1.0, 20.0};
  for (double mu : vals)
    for (double gamma : vals)
      for (double t : {0.01, 0.3, 2.0})
        for (double v : {-10.0, -1.3, -0.2, 0.0, 0.07, 0.6, 2.2, 9.0}) {
          const BerhuPenalty pen(mu, gamma);
          EXPECT_NEAR(pen.prox(t, v), prox_oracle(pen, t, v), 1e-6)
              << mu << " " << gamma << " " << t << " " << v;
        }
}

TEST(Berhu, Indicator) {
  const BerhuPenalty pen(1.0, 4.0);  // knot 2
  EXPECT_EQ(pen.indicator(0.0), 0.0);
  EXPECT_NEAR(pen.indicator(1.0), 0.5, 1e-15);
  EXPECT_EQ(pen.indicator(-3.0), 1.0);
  const BerhuPenalty ridge(0.0, 4.0);
  EXPECT_EQ(ridge.indicator(1e-8), 1.0);
  EXPECT_NEAR(ridge.value(2.0), 1.0, 1e-15);
}
