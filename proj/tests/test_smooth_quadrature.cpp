#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "semiflux/ext_real.hpp"
#include "semiflux/quadrature.hpp"
#include "semiflux/smooth.hpp"

using namespace semiflux;

TEST(Polynomial, Arithmetic) {
  Polynomial p{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(p(2.0), 17.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), 14.0);
  EXPECT_DOUBLE_EQ(p.reflected()(2.0), p(-2.0));
  EXPECT_DOUBLE_EQ(p.shifted(1.0)(3.0), p(2.0));
  EXPECT_DOUBLE_EQ((p * p)(1.5), p(1.5) * p(1.5));
}

TEST(Polynomial, RootsInInterval) {
  Polynomial p{-6.0, 11.0, -6.0, 1.0};  // (x-1)(x-2)(x-3)
  auto r = p.roots_in(0.0, 10.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_NEAR(r[1], 2.0, 1e-12);
  EXPECT_NEAR(r[2], 3.0, 1e-12);
  EXPECT_EQ(p.roots_in(1.5, 1.9).size(), 0u);
}

TEST(SmoothFn, GaussianDerivatives) {
  SmoothFn g = SmoothFn::gaussian();
  for (double x : {-1.3, 0.0, 0.7, 2.1}) {
    EXPECT_NEAR(g(x), std::exp(-x * x), 1e-15);
    EXPECT_NEAR(g.derivative()(x), -2 * x * std::exp(-x * x), 1e-15);
    EXPECT_NEAR(g.derivative(2)(x), (4 * x * x - 2) * std::exp(-x * x), 1e-14);
  }
  EXPECT_TRUE(g.decays());
  EXPECT_FALSE(SmoothFn::identity().decays());
}

TEST(SmoothFn, ProductAndReflection) {
  SmoothFn f = SmoothFn::identity() * SmoothFn::gaussian(1.0);
  EXPECT_NEAR(f(0.5), 0.5 * std::exp(-0.25), 1e-15);
  EXPECT_NEAR(f.reflected()(0.5), f(-0.5), 1e-15);
  EXPECT_NEAR(f.shifted(2.0)(2.5), f(0.5), 1e-15);
}

TEST(SmoothFn, CriticalPoints) {
  auto c = SmoothFn::hermite_gaussian(1).critical_points(-5.0, 5.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(std::abs(c[0]), std::sqrt(0.5), 1e-10);
}

TEST(Quadrature, GaussianOverLine) {
  auto r = quadrature::integrate([](double x) { return std::exp(-x * x); }, -kInf, kInf);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-10);
}

TEST(Quadrature, AgreesWithSimpsonOracle) {
  auto f = [](double x) { return std::sin(3 * x) * std::exp(-x * x / 2) + x * x; };
  EXPECT_NEAR(quadrature::integrate(f, -2.0, 3.0).value, oracle::simpson(f, -2.0, 3.0), 1e-9);
}

TEST(Quadrature, NonDecayingTailThrows) {
  EXPECT_THROW(quadrature::integrate([](double) { return 1.0; }, 0.0, kInf), quadrature::QuadratureError);
}
