#include <gtest/gtest.h>

#include "oracles.hpp"
#include "semiflux/distributions.hpp"

using namespace semiflux;

TEST(Distribution, DeltaAndDeltaPrime) {
  const SmoothFn phi = SmoothFn::gaussian(0.2);
  EXPECT_NEAR(pair(Distribution::delta(0.0), phi), phi(0.0), 1e-15);
  // <delta', phi> = -phi'(0).
  EXPECT_NEAR(pair(Distribution::delta_prime(0.0), phi), -phi.derivative()(0.0), 1e-15);
  EXPECT_THROW(Distribution(PiecewiseFn::constant(0.0), {{0.0, 2, 1.0}}), std::invalid_argument);
}

TEST(Distribution, MergesAtomsAndReflects) {
  Distribution d = add(Distribution::delta_prime(1.0, 2.0), Distribution::delta_prime(1.0, 0.5));
  ASSERT_EQ(d.atoms().size(), 1u);
  EXPECT_DOUBLE_EQ(d.atoms()[0].weight, 2.5);
  Distribution r = reflect(d);
  EXPECT_EQ(r.atoms()[0].point, -1.0);
  EXPECT_DOUBLE_EQ(r.atoms()[0].weight, -2.5);
  const SmoothFn phi = SmoothFn::gaussian(0.4);
  EXPECT_NEAR(pair(r, phi), pair(d, phi.reflected()), 1e-14);
}

TEST(Distribution, PrimitiveIsOrientedHeaviside) {
  Distribution d = Distribution::delta(0.0);
  EXPECT_TRUE(equivalent(primitive(d, Orientation::Left), heaviside(Orientation::Left)));
  EXPECT_TRUE(equivalent(primitive(d, Orientation::Right), heaviside(Orientation::Right)));
  EXPECT_TRUE(equivalent(half_sgn_primitive(scale(2.0, d), Orientation::Left), sgn(Orientation::Left)));
  EXPECT_THROW(primitive(Distribution::delta_prime(), Orientation::Left), std::invalid_argument);
  EXPECT_THROW(primitive(d, Orientation::Standard), std::invalid_argument);
}

TEST(Distribution, FundamentalTheoremRoundTrip) {
  // Derivative of a semicontinuous step, then the oriented primitive,
  // recovers the step up to its value at -inf.
  PiecewiseFn f({-1.0, 0.5, 2.0}, {SmoothFn::constant(0.0), SmoothFn::constant(1.5), SmoothFn::constant(-0.5), SmoothFn::constant(0.25)},
                {std::nullopt, std::nullopt, std::nullopt});
  for (Orientation o : {Orientation::Left, Orientation::Right}) {
    PiecewiseFn fo = extend(f, o);
    PiecewiseFn back = primitive(distributional_derivative(fo, o), o);
    EXPECT_TRUE(equivalent(back, fo)) << to_string(o);
  }
}

TEST(Distribution, DerivativePairsLikeIntegrationByParts) {
  const SmoothFn phi = SmoothFn::gaussian(0.1, 0.8);
  PiecewiseFn f = extend(PiecewiseFn({0.0}, {SmoothFn::identity(), SmoothFn::constant(2.0)}, {std::nullopt}), Orientation::Left);
  double lhs = pair(distributional_derivative(f, Orientation::Left), phi);
  double rhs = -pair_against_test_derivative(f, phi, Orientation::Left);
  EXPECT_NEAR(lhs, rhs, 1e-9);
}

TEST(EulerCharacter, ReferenceValues) {
  PiecewiseFn lsgn1 = subtract(heaviside(Orientation::Left), reflect(heaviside(Orientation::Left)));
  EXPECT_EQ(euler_character(lsgn1, Orientation::Left), 0);
  EXPECT_EQ(euler_character(sgn(Orientation::Left), Orientation::Left), 0);
  EXPECT_EQ(euler_character(sgn_two_sided(), Orientation::Standard), 1);
  EXPECT_EQ(euler_character(PiecewiseFn::constant(1.0), Orientation::Standard), 1);
}

TEST(RegularizedDelta, MatchesClosedForm) {
  const SmoothFn phi = SmoothFn::gaussian();
  for (double eps : {0.5, 0.1, 1e-2, 1e-3})
    EXPECT_NEAR(regularized_pair(RegularizedDelta(eps), phi), oracle::cauchy_gaussian(eps), 1e-9) << eps;
  EXPECT_THROW(RegularizedDelta(0.0), std::invalid_argument);
  EXPECT_THROW(regularized_pair(RegularizedDelta(0.1), SmoothFn::constant(1.0)), std::invalid_argument);
}

TEST(RegularizedDelta, FirstOrderConvergence) {
  const SmoothFn phi = SmoothFn::gaussian();
  double e1 = std::abs(regularized_pair(RegularizedDelta(1e-3), phi) - 1.0);
  double e2 = std::abs(regularized_pair(RegularizedDelta(5e-4), phi) - 1.0);
  EXPECT_NEAR(e1 / e2, 2.0, 0.2);
}
