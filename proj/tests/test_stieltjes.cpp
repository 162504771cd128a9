#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "semiflux/acceptance.hpp"
#include "semiflux/parallel.hpp"
#include "semiflux/stieltjes.hpp"

using namespace semiflux;

namespace {

const IntervalSet kUnit{Interval::closed(0.0, 1.0)};

std::function<double(double)> fn(const PiecewiseFn& f) {
  return [f](double x) { return f.value_or_mean(x); };
}

}  // namespace

TEST(Measure, HeavisideAsymmetry) {
  Measure m = Measure::from_distribution(heaviside(Orientation::Left), MeasureKind::StieltjesLeft);
  EXPECT_EQ(measure_of(m, IntervalSet{Interval::left_open(0.0, 1.0)}), 0.0);
  // Closing [0,1] to (0,1] under the left kind drops the atom at 0.
  EXPECT_EQ(measure_of(m, IntervalSet{Interval::closed(0.0, 1.0)}), 0.0);
  EXPECT_THROW(measure_of(m, IntervalSet{Interval::point(0.0)}), TopologyMismatch);
  // Without closure the closed interval sees the full jump.
  Measure full = Measure::from_distribution(heaviside(Orientation::Left), MeasureKind::Lebesgue);
  EXPECT_EQ(measure_of(full, IntervalSet{Interval::closed(0.0, 1.0)}), 1.0);
  EXPECT_EQ(measure_of(full, IntervalSet{Interval::point(0.0)}), 1.0);
  PiecewiseFn right_step = subtract(heaviside(Orientation::Right), PiecewiseFn::constant(1.0));
  Measure r = Measure::from_distribution(right_step, MeasureKind::StieltjesRight);
  // Mirror image: the jump at 0 is seen only by a piece straddling 0.
  EXPECT_EQ(measure_of(r, IntervalSet{Interval::right_open(-1.0, 0.0)}), 0.0);
  EXPECT_EQ(measure_of(r, IntervalSet{Interval::right_open(0.0, 1.0)}), 0.0);
  EXPECT_EQ(measure_of(r, IntervalSet{Interval::right_open(-1.0, 1.0)}), 1.0);
  EXPECT_EQ(measure_of(m, IntervalSet{Interval::left_open(-1.0, 1.0)}), 1.0);
}

TEST(Measure, LebesgueLength) {
  EXPECT_DOUBLE_EQ(measure_of(Measure::lebesgue(), IntervalSet{Interval::open(-1.0, 2.5)}), 3.5);
}

TEST(Measure, RejectsWrongSemicontinuity) {
  PiecewiseFn right_step = subtract(heaviside(Orientation::Right), PiecewiseFn::constant(1.0));  // -H_L(-x)
  EXPECT_THROW(Measure::from_distribution(right_step, MeasureKind::StieltjesLeft), std::invalid_argument);
  EXPECT_NO_THROW(Measure::from_distribution(right_step, MeasureKind::StieltjesRight));
  EXPECT_THROW(Measure::from_distribution(heaviside(Orientation::Right), MeasureKind::StieltjesRight), std::invalid_argument);
}

TEST(Measure, DiracAtom) {
  Measure d = Measure::dirac(0.5, 2.0);
  EXPECT_EQ(measure_of(d, kUnit), 2.0);
  EXPECT_EQ(measure_of(d, IntervalSet{Interval::open(0.6, 1.0)}), 0.0);
  EXPECT_DOUBLE_EQ(integrate(SmoothFn::identity(), d, kUnit), 1.0);
}

TEST(Measure, RoundTripLengthsOfOrientedPieces) {
  // F(x) = x^2 + 2 H_L(x - 1/2): mu_L((a, b]) = F(b) - F(a).
  PiecewiseFn f = add(PiecewiseFn::smooth(SmoothFn::polynomial({0.0, 0.0, 1.0})),
                      scale(2.0, shift(heaviside(Orientation::Left), 0.5)));
  f = add(f, PiecewiseFn::constant(-f(0.0)));
  Measure m = Measure::from_distribution(f, MeasureKind::StieltjesLeft);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_NEAR(measure_of(m, IntervalSet{Interval::left_open(a, b)}), f(b) - f(a), 1e-12);
  }
}

TEST(Integrate, ContinuousDistributionIsIndifferentToOrientation) {
  PiecewiseFn f = PiecewiseFn::smooth(SmoothFn::polynomial({0.0, 1.0, 0.5}));
  PiecewiseFn g = PiecewiseFn::smooth(SmoothFn::gaussian());
  double l = integrate(g, Measure::from_distribution(f, MeasureKind::StieltjesLeft), kUnit);
  double r = integrate(g, Measure::from_distribution(f, MeasureKind::StieltjesRight), kUnit);
  double leb = integrate(mul(g, f.derivative()), Measure::lebesgue(), kUnit);
  EXPECT_NEAR(l, r, 1e-12);
  EXPECT_NEAR(l, leb, 1e-12);
  EXPECT_NEAR(l, oracle::simpson([](double x) { return std::exp(-x * x) * (1.0 + x); }, 0.0, 1.0), 1e-10);
}

TEST(TotalVariation, AgreesWithPartitionOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    PiecewiseFn f = extend(acceptance::detail::random_piecewise_polynomial(rng), Orientation::Left);
    f = add(f, PiecewiseFn::constant(-f.value_or_mean(0.0)));
    if (f.breakpoint_index(0.0)) continue;  // distribution must be semicontinuous at 0 with F(0) = 0
    Measure m = Measure::from_distribution(f, MeasureKind::StieltjesLeft);
    IntervalSet s{Interval::left_open(0.0, 1.0)};
    double tv = total_variation(m, s);
    double ref = oracle::partition_variation([&](double x) { return f(x); }, 0.0, 1.0, f.breakpoints());
    EXPECT_NEAR(tv, ref, 1e-6) << "trial " << t;
  }
}

TEST(Pairing, OrientedSignTable) {
  const SmoothFn phi = SmoothFn::gaussian();
  EXPECT_NEAR(pair_against_test_derivative(sgn(Orientation::Left), phi, Orientation::Left), -2.0, 1e-8);
  EXPECT_NEAR(pair_against_test_derivative(sgn(Orientation::Left), phi, Orientation::Right), 0.0, 1e-8);
  EXPECT_NEAR(pair_against_test_derivative(sgn(Orientation::Right), phi, Orientation::Left), 0.0, 1e-8);
  EXPECT_NEAR(pair_against_test_derivative(sgn(Orientation::Right), phi, Orientation::Right), -2.0, 1e-8);
}

TEST(Pairing, SmoothFunctionsMatchDirectIntegral) {
  // For continuous f the pairing is the ordinary integral of f phi'.
  const SmoothFn phi = SmoothFn::hermite_gaussian(2);
  PiecewiseFn f({-0.5, 0.8}, {SmoothFn::polynomial({1.0, 1.0}), SmoothFn::polynomial({0.75, 0.5}), SmoothFn::polynomial({0.35, 1.0})},
                {std::nullopt, std::nullopt});
  f = extend(f, Orientation::Left);
  auto integrand = [&](double x) { return f.value_or_mean(x) * phi.derivative()(x); };
  double ref = oracle::simpson_pieces(integrand, {-12.0, -0.5, 0.8, 12.0});
  for (Orientation o : {Orientation::Left, Orientation::Right, Orientation::Standard})
    EXPECT_NEAR(pair_against_test_derivative(f, phi, o), ref, 1e-8);
}

TEST(Pairing, LinearityAndReflectionCovariance) {
  const SmoothFn phi = SmoothFn::gaussian(0.3, 1.2);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 50; ++t) {
    PiecewiseFn f = acceptance::detail::random_left_step(rng), g = acceptance::detail::random_left_step(rng);
    for (Orientation o : {Orientation::Left, Orientation::Right}) {
      double lhs = pair_against_test_derivative(add(scale(2.0, f), g), phi, o);
      double rhs = 2.0 * pair_against_test_derivative(f, phi, o) + pair_against_test_derivative(g, phi, o);
      EXPECT_NEAR(lhs, rhs, 1e-9);
      // <R f, phi'> = -<f, (R phi)'> with the mirrored orientation.
      double refl = pair_against_test_derivative(reflect(f), phi, o);
      EXPECT_NEAR(refl, -pair_against_test_derivative(f, phi.reflected(), mirror(o)), 1e-9);
    }
  }
}

TEST(Pairing, NonDecayingTestFunctionThrows) {
  EXPECT_THROW(pair_against_test_derivative(sgn(Orientation::Left), SmoothFn::identity(), Orientation::Left),
               std::invalid_argument);
}

TEST(Norms, AgreeWithSamplingOracles) {
  std::mt19937_64 rng(0x5eed);
  for (int t = 0; t < 50; ++t) {
    PiecewiseFn f = acceptance::detail::random_piecewise_polynomial(rng);
    Norms n = norms(f, kUnit, 3.0);
    std::vector<double> cuts{0.0};
    for (double b : f.breakpoints())
      if (b > 0.0 && b < 1.0) cuts.push_back(b);
    cuts.push_back(1.0);
    auto pow_abs = [&](double p) { return [&, p](double x) { return std::pow(std::abs(f.value_or_mean(x)), p); }; };
    EXPECT_NEAR(n.l1, oracle::simpson_pieces(pow_abs(1.0), cuts), 1e-7);
    EXPECT_NEAR(n.lp, std::pow(oracle::simpson_pieces(pow_abs(3.0), cuts), 1.0 / 3.0), 1e-7);
    EXPECT_NEAR(n.l1, oracle::riemann_lp(fn(f), 0.0, 1.0, 1.0), 1e-4);
    // Dense sampling of the open interior, plus assigned values at breakpoints
    // inside the closed set.
    double dense = 0.0;
    for (int i = 1; i < 100000; ++i) dense = std::max(dense, std::abs(f.value_or_mean(i / 100000.0)));
    for (double b : f.breakpoints())
      if (auto v = f.value_at(b); v && b >= 0.0 && b <= 1.0) dense = std::max(dense, std::abs(*v));
    EXPECT_GE(n.sup + 1e-12, dense);
    EXPECT_LE(n.sup, dense + 1e-3);
    EXPECT_LE(n.l1, n.l2 + 1e-10);
    EXPECT_LE(n.l2, n.sup + 1e-10);
  }
}

TEST(Norms, UnboundedBvThrows) {
  EXPECT_THROW(bv_norm(sgn(Orientation::Left), IntervalSet{Interval::real_line()}), std::invalid_argument);
}

TEST(JumpMeasure, OrientationSelectsVisibleJumps) {
  std::mt19937_64 rng(0xc0ffee);
  for (int t = 0; t < 100; ++t) {
    PiecewiseFn f = acceptance::detail::random_left_step(rng);
    EXPECT_EQ(oriented_jump_mass(f, MeasureKind::StieltjesRight), 0.0);
    EXPECT_GT(oriented_jump_mass(f, MeasureKind::StieltjesLeft), 0.0);
    EXPECT_EQ(oriented_jump_mass(reflect(f), MeasureKind::StieltjesLeft), 0.0);
  }
}

TEST(Parallel, ThreadCountDoesNotChangeResults) {
  auto a = acceptance::norm_chain(1);
  auto b = acceptance::norm_chain(4);
  EXPECT_EQ(a.measured.substr(0, a.measured.find(" in ")), b.measured.substr(0, b.measured.find(" in ")));
  auto work = [](std::size_t i) {
    std::mt19937_64 rng(i);
    PiecewiseFn f = acceptance::detail::random_piecewise_polynomial(rng);
    return bv_norm(f, kUnit);
  };
  EXPECT_EQ(parallel_map<double>(64, work, 1), parallel_map<double>(64, work, 3));
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_map<int>(8, [](std::size_t i) -> int {
                 if (i == 5) throw std::runtime_error("boom");
                 return int(i);
               }, 2),
               std::runtime_error);
}
