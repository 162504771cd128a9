#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "semiflux/symplectic.hpp"

using namespace semiflux;

TEST(Flow, LinearPotentialMatchesExactSolution) {
  // theta = q^2/2 gives H1 = p^2/2 + q, so q = 1 - t^2/2, p = -t.
  HamiltonianPair h;
  h.theta = Profile::polynomial({0.0, 0.0, 0.5});
  auto traj = flow(h, Flow::H1, PhasePoint{1.0, 0.0}, 2.0, 1e-2);
  for (const auto& s : traj) {
    EXPECT_NEAR(s.q, 1.0 - 0.5 * s.t * s.t, 1e-12);
    EXPECT_NEAR(s.p, -s.t, 1e-12);
  }
}

TEST(Flow, CubicPotentialIsHarmonicOscillator) {
  // theta = q^3/6 gives H1 = (p^2 + q^2)/2 with period 2 pi.
  HamiltonianPair h;
  h.theta = Profile::polynomial({0.0, 0.0, 0.0, 1.0 / 6.0});
  auto traj = flow(h, Flow::H1, PhasePoint{1.0, 0.0}, 2.0 * std::numbers::pi, 1e-3);
  EXPECT_NEAR(traj.back().q, 1.0, 1e-10);
  EXPECT_NEAR(traj.back().p, 0.0, 1e-10);
  EXPECT_LT(max_energy_drift(traj), 1e-12);
}

TEST(Flow, H2ConservesEnergy) {
  HamiltonianPair h;
  h.alpha = Profile::tanh(0.5);
  auto traj = flow(h, Flow::H2, PhasePoint{0.0, 1.0}, 1.0, 1e-3);
  EXPECT_LT(max_energy_drift(traj), 1e-8);
  EXPECT_NEAR(traj.back().t, 1.0, 1e-12);
}

TEST(Flow, FlippedRightHandSideDiffersFromHamiltonsEquations) {
  HamiltonianPair h;
  h.alpha = Profile::tanh(0.5);
  PhasePoint x{0.3, 1.0};
  auto a = eom(h, Flow::H2, x), b = vector_field(h, Flow::H2, x);
  EXPECT_DOUBLE_EQ(a.dq, b.dq);
  EXPECT_DOUBLE_EQ(a.dp, -b.dp);
  auto drifted = flow(h, Flow::H2, PhasePoint{0.0, 1.0}, 1.0, 1e-3, 1, FlowField::FlippedCoupling);
  EXPECT_GT(max_energy_drift(drifted), 1e-3);
}

TEST(Flow, DomainExitWhenAlphaReachesOne) {
  HamiltonianPair h;
  h.alpha = Profile::polynomial({0.0, 1.0});  // alpha = q
  try {
    flow(h, Flow::H2, PhasePoint{0.0, 1.0}, 5.0, 1e-3);
    FAIL() << "expected DomainExit";
  } catch (const DomainExit& e) {
    EXPECT_GT(e.time, 0.0);
    EXPECT_LT(e.time, 5.0);
  }
}

TEST(ClosedForm, ResidualMatchesTruncationOracle) {
  HamiltonianPair h;
  h.alpha = Profile::polynomial({0.0, 0.0, 0.0, 1.0});  // alpha''' = 6
  const int n = 33;
  const double hq = 2.0 / (n - 1);
  double r = check_closed_dH2(h, {}, n);
  // Worst case at |p| = 1; the p-derivative is exact for this quadratic in p.
  EXPECT_NEAR(r, oracle::closedness_truncation(6.0, 1.0, hq), 1e-12);
  HamiltonianPair quad;
  quad.alpha = Profile::polynomial({0.1, 0.2, 0.3});
  EXPECT_LT(check_closed_dH2(quad, {}, n), 1e-13);
}

TEST(ClosedForm, SecondOrderInGridSpacing) {
  HamiltonianPair h;
  h.alpha = Profile::tanh(0.5);
  double a = check_closed_dH2(h, {}, 17), b = check_closed_dH2(h, {}, 33);
  EXPECT_NEAR(a / b, 4.0, 0.4);
}

TEST(Poincare, ResidualIsAlphaPSquared) {
  HamiltonianPair h;
  h.alpha = Profile::tanh(0.5);
  PhasePoint x{0.7, -1.3};
  EXPECT_NEAR(poincare_residual(h, x), 0.5 * std::tanh(0.7) * 1.69, 1e-14);
}

TEST(Flow, ParseNames) {
  EXPECT_EQ(parse_flow("H1"), Flow::H1);
  EXPECT_EQ(parse_flow("h2"), Flow::H2);
  EXPECT_THROW(parse_flow("H3"), std::invalid_argument);
}
