#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "semiflux/acceptance.hpp"
#include "semiflux/hamiltonian.hpp"

using namespace semiflux;

TEST(Config, Validation) {
  HamiltonianConfig c;
  c.grid_n = 7;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.grid_n = 16;
  c.orientation = Orientation::Standard;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.orientation = Orientation::Left;
  c.alpha = 8.0;  // factor * alpha = 2 > a^2
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.krein_override = true;
  EXPECT_NO_THROW(c.validate());
}

TEST(Spectrum, FreeGridMatchesOracle) {
  HamiltonianConfig c;
  c.grid_n = 64;
  c.a = 1.3;
  auto ev = spectrum(build(c));
  auto ref = oracle::free_grid_eigenvalues(1.3, 64, 2.0 * std::numbers::pi);
  ASSERT_EQ(ev.size(), ref.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    EXPECT_NEAR(ev[i].real(), ref[i], 1e-9 * std::max(1.0, ref[i]));
    EXPECT_EQ(ev[i].imag(), 0.0);
  }
}

TEST(Spectrum, ConvergesAtSecondOrder) {
  auto err = [](int n) {
    HamiltonianConfig c;
    c.grid_n = n;
    auto ev = spectrum(build(c));
    return std::abs(ev[5].real() - 9.0);
  };
  EXPECT_NEAR(err(128) / err(256), 4.0, 0.4);
}

TEST(Spectrum, CouplingKeepsRealPositiveSpectrum) {
  HamiltonianConfig c;
  c.alpha = 0.5;
  auto ev = spectrum(build(c));
  for (auto z : ev) {
    EXPECT_EQ(z.imag(), 0.0);
    EXPECT_GE(z.real(), -1e-9);
  }
}

TEST(Krein, ModelIsJSymmetric) {
  for (Orientation o : {Orientation::Left, Orientation::Right}) {
    auto a = krein_model(64, 2.0 * std::numbers::pi, o);
    auto r = krein_check(a, KreinForm::from_orientation(a.grid(), o));
    EXPECT_LT(r.j_symmetry_residual, 1e-12);
    EXPECT_LE(std::abs(r.pos_subspace_dim - 32), 1);
    EXPECT_LE(std::abs(r.neg_subspace_dim - 32), 1);
  }
}

TEST(Krein, OrientationDecidesTheOriginSign) {
  Grid g(16, 1.0);
  EXPECT_EQ(KreinForm::from_orientation(g, Orientation::Left).j[g.origin()], -1.0);
  EXPECT_EQ(KreinForm::from_orientation(g, Orientation::Right).j[g.origin()], 1.0);
}

TEST(NormRatio, ChainBoundIsAttained) {
  HamiltonianConfig c;
  c.alpha = 0.5;
  auto h = build(c);
  for (const char* name : {"gaussian", "x-gaussian", "hermite-gaussian-2"}) {
    SmoothFn phi = std::string(name) == "gaussian" ? SmoothFn::gaussian()
                   : std::string(name) == "x-gaussian" ? SmoothFn::hermite_gaussian(1)
                                                        : SmoothFn::hermite_gaussian(2);
    auto r = operator_norm_ratio(h, phi);
    EXPECT_NEAR(r.ratio, 1.0, 1e-6) << name;
    EXPECT_LE(r.direct_ratio, 1.0 + 1e-9) << name;
  }
  EXPECT_THROW(operator_norm_ratio(h, SmoothFn::identity()), std::invalid_argument);
}

TEST(Decomposition, OrientedSectorsAreOrthogonal) {
  HamiltonianConfig c;
  c.alpha = 0.5;
  std::mt19937_64 rng(0xc0ffee00);
  for (int t = 0; t < 50; ++t) {
    PiecewiseFn l = acceptance::detail::random_left_step(rng);
    PiecewiseFn win = indicator(Interval::left_open(-4.0, 4.0));
    l = mul(l, win);
    PiecewiseFn r = reflect(acceptance::detail::random_left_step(rng));
    r = mul(r, reflect(win));
    auto rep = decomposition_check(l, r, c);
    EXPECT_LT(rep.cross_max(), 1e-10);
  }
}

TEST(Propagation, TrotterConvergesToExponential) {
  HamiltonianConfig c;
  c.alpha = 0.5;
  c.grid_n = 64;
  auto h = build(c);
  auto psi0 = normalized_state(h.grid(), SmoothFn::gaussian());
  auto exact = propagate(h, psi0, 0.1, Propagation::exponential());
  double e32 = h.grid().l2_norm(propagate(h, psi0, 0.1, Propagation::trotter(32)) - exact);
  double e64 = h.grid().l2_norm(propagate(h, psi0, 0.1, Propagation::trotter(64)) - exact);
  EXPECT_NEAR(e32 / e64, 2.0, 0.4);
}

TEST(Propagation, FreeEvolutionDampsModes) {
  HamiltonianConfig c;
  c.grid_n = 32;
  auto h = build(c);
  Eigen::VectorXd v(32);
  for (int j = 0; j < 32; ++j) v[j] = std::cos(h.grid().x[j]);
  v /= h.grid().l2_norm(v);
  auto out = propagate(h, v, 0.5, Propagation::exponential());
  double lam = oracle::free_grid_eigenvalues(1.0, 32, 2.0 * std::numbers::pi)[1];
  EXPECT_NEAR(h.grid().l2_norm(out), std::exp(-0.5 * lam), 1e-12);
}

TEST(Propagation, RejectsKreinRegimeAndBadStates) {
  HamiltonianConfig c;
  c.alpha = 8.0;
  c.krein_override = true;
  auto h = build(c);
  auto psi0 = normalized_state(h.grid(), SmoothFn::gaussian());
  EXPECT_THROW(propagate(h, psi0, 0.1, Propagation::exponential()), std::invalid_argument);
  auto free = build(HamiltonianConfig{});
  EXPECT_THROW(propagate(free, 2.0 * psi0, 0.1, Propagation::exponential()), std::invalid_argument);
}

TEST(HilbertForm, VanishesOnLinearPieces) {
  HamiltonianConfig c;
  PiecewiseFn psi = PiecewiseFn::smooth(SmoothFn::polynomial({1.0, 2.0}));
  EXPECT_EQ(hilbert_form_norm(psi, c, IntervalSet{Interval::closed(-1.0, 1.0)}), 0.0);
  PiecewiseFn q = PiecewiseFn::smooth(SmoothFn::polynomial({0.0, 0.0, 1.0}));
  EXPECT_GT(hilbert_form_norm(q, c, IntervalSet{Interval::closed(-1.0, 1.0)}), 0.0);
}
