#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "semiflux/distributions.hpp"
#include "semiflux/hamiltonian.hpp"
#include "semiflux/io.hpp"
#include "semiflux/parallel.hpp"
#include "semiflux/piecewise.hpp"
#include "semiflux/stieltjes.hpp"
#include "semiflux/symplectic.hpp"

namespace semiflux::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
  std::string tolerance;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

template <class F>
CriterionResult timed(int id, std::string name, F body) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.pass = false;
    r.measured = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = std::move(name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Random piecewise polynomial on [0,1] with 0-3 interior breakpoints,
/// occasional breakpoints at the ends, and point values drawn from the left
/// limit, the right limit, an unrelated number, or left unassigned.
inline PiecewiseFn random_piecewise_polynomial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0), pos(0.05, 0.95), unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 3), degree(0, 3), pick(0, 3);
  std::vector<double> b;
  int k = count(rng);
  for (int i = 0; i < k; ++i) b.push_back(pos(rng));
  if (unit(rng) < 0.2) b.push_back(0.0);
  if (unit(rng) < 0.2) b.push_back(1.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<SmoothFn> pieces;
  for (std::size_t i = 0; i <= b.size(); ++i) {
    std::vector<double> c(std::size_t(degree(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    pieces.push_back(SmoothFn::polynomial(c));
  }
  PiecewiseFn f(b, pieces, std::vector<std::optional<double>>(b.size()));
  std::vector<std::optional<double>> v;
  for (double x : b) {
    switch (pick(rng)) {
      case 0: v.push_back(f.left_limit(x)); break;
      case 1: v.push_back(f.right_limit(x)); break;
      case 2: v.push_back(coef(rng)); break;
      default: v.push_back(std::nullopt); break;
    }
  }
  return f.with_values(std::move(v));
}

/// Random left-semicontinuous step function with 1-4 jumps in (-3, 3).
inline PiecewiseFn random_left_step(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0), level(-2.0, 2.0), jump(0.1, 2.0);
  std::uniform_int_distribution<int> count(1, 4), sign(0, 1);
  std::vector<double> b;
  int k = count(rng);
  while (int(b.size()) < k) {
    double x = pos(rng);
    if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
  }
  std::sort(b.begin(), b.end());
  std::vector<SmoothFn> pieces{SmoothFn::constant(level(rng))};
  double cur = pieces.back()(0.0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    cur += (sign(rng) ? 1.0 : -1.0) * jump(rng);
    pieces.push_back(SmoothFn::constant(cur));
  }
  PiecewiseFn f(b, pieces, std::vector<std::optional<double>>(b.size()));
  return extend(f, Orientation::Left);
}

}  // namespace detail

inline CriterionResult pairing_table() {
  return detail::timed(1, "pairing table <sgn_o, phi'> under each orientation", [] {
    CriterionResult r;
    const SmoothFn phi = SmoothFn::gaussian();
    struct Row {
      Orientation f, o;
      double expected;
    } rows[] = {{Orientation::Left, Orientation::Left, -2.0},
                {Orientation::Right, Orientation::Left, 0.0},
                {Orientation::Left, Orientation::Right, 0.0},
                {Orientation::Right, Orientation::Right, -2.0}};
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& row : rows) {
      double v = pair_against_test_derivative(sgn(row.f), phi, row.o);
      worst = std::max(worst, std::abs(v - row.expected));
      r.measured += (r.measured.empty() ? "" : " ") + detail::fmt(v, "%.10g");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.measured += " (max err " + detail::fmt(worst, "%.2e") + ", " + detail::fmt(secs, "%.3f") + " s)";
    r.expected = "-2 0 0 -2";
    r.tolerance = "1e-8 each; < 1 s";
    r.pass = worst <= 1e-8 && secs < 1.0;
    return r;
  });
}

inline CriterionResult single_heaviside_pairing() {
  return detail::timed(2, "<H_L(x) - H_L(-x), phi'> under Left", [] {
    CriterionResult r;
    PiecewiseFn f = subtract(heaviside(Orientation::Left), reflect(heaviside(Orientation::Left)));
    double v = pair_against_test_derivative(f, SmoothFn::gaussian(), Orientation::Left);
    r.measured = detail::fmt(v, "%.12g");
    r.expected = "-1";
    r.tolerance = "1e-8";
    r.pass = std::abs(v + 1.0) <= 1e-8;
    return r;
  });
}

inline CriterionResult euler_characters() {
  return detail::timed(3, "Euler characters", [] {
    CriterionResult r;
    int semi = euler_character(subtract(heaviside(Orientation::Left), reflect(heaviside(Orientation::Left))), Orientation::Left);
    int semi_sgn = euler_character(sgn(Orientation::Left), Orientation::Left);
    int two = euler_character(sgn_two_sided(), Orientation::Standard);
    r.measured = "H_L(x)-H_L(-x)/left=" + std::to_string(semi) + " sgn_L/left=" + std::to_string(semi_sgn) +
                 " sgn/standard=" + std::to_string(two);
    r.expected = "0, 0, 1";
    r.tolerance = "exact";
    r.pass = semi == 0 && semi_sgn == 0 && two == 1;
    return r;
  });
}

inline CriterionResult measure_asymmetry() {
  return detail::timed(4, "measure asymmetry of H_L", [] {
    CriterionResult r;
    double left = measure_of(Measure::from_distribution(heaviside(Orientation::Left), MeasureKind::StieltjesLeft),
                             IntervalSet{Interval::left_open(0.0, 1.0)});
    double closed = measure_of(Measure::from_distribution(heaviside(Orientation::Left), MeasureKind::Lebesgue),
                               IntervalSet{Interval::closed(0.0, 1.0)});
    r.measured = "mu_L(0,1]=" + detail::fmt(left, "%.17g") + " closed[0,1]=" + detail::fmt(closed, "%.17g");
    r.expected = "0 and 1";
    r.tolerance = "exact";
    r.pass = left == 0.0 && closed == 1.0;
    return r;
  });
}

inline CriterionResult norm_chain(unsigned threads = thread_budget()) {
  return detail::timed(5, "norm chain on [0,1], 1000 random piecewise polynomials", [threads] {
    CriterionResult r;
    constexpr std::size_t kCount = 1000;
    constexpr double kTol = 1e-10;  // quadrature tolerance
    auto t0 = std::chrono::steady_clock::now();
    auto violations = parallel_map<int>(kCount, [](std::size_t i) {
      std::mt19937_64 rng(0x5eed0000 + i);
      PiecewiseFn f = detail::random_piecewise_polynomial(rng);
      IntervalSet s{Interval::closed(0.0, 1.0)};
      double sup = sup_norm(f, s), bv = bv_norm(f, s);
      int bad = sup > bv + kTol ? 1 : 0;
      for (double p : {1.0, 2.0, 4.0})
        if (lp_norm(f, s, p) > sup + kTol) ++bad;
      return bad;
    }, threads);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int total = 0;
    for (int v : violations) total += v;
    r.measured = std::to_string(total) + " violations in " + detail::fmt(secs, "%.2f") + " s";
    r.expected = "0 violations";
    r.tolerance = "comparisons to 1e-10 (quadrature); < 10 s";
    r.pass = total == 0 && secs < 10.0;
    return r;
  });
}

inline CriterionResult orthogonality(unsigned threads = thread_budget()) {
  return detail::timed(6, "orthogonality of left/right jump content, 500 step pairs", [threads] {
    CriterionResult r;
    constexpr std::size_t kCount = 500;
    HamiltonianConfig cfg;
    cfg.alpha = 0.5;
    struct Outcome {
      double wrong_mass = 0.0;
      double right_mass = 0.0;
      double cross = 0.0;
    };
    auto out = parallel_map<Outcome>(kCount, [&](std::size_t i) {
      std::mt19937_64 rng(0xc0ffee00 + i);
      PiecewiseFn fl = detail::random_left_step(rng);
      PiecewiseFn fr = extend(fl, Orientation::Right);
      IntervalSet window{Interval::left_open(-4.0, 4.0)};
      Outcome o;
      o.wrong_mass = std::abs(oriented_jump_mass(fl, MeasureKind::StieltjesRight)) +
                     std::abs(oriented_jump_mass(fr, MeasureKind::StieltjesLeft)) +
                     std::abs(measure_of(jump_measure(fl, MeasureKind::StieltjesRight), window));
      o.right_mass = std::min(oriented_jump_mass(fl, MeasureKind::StieltjesLeft), oriented_jump_mass(fr, MeasureKind::StieltjesRight));
      o.cross = decomposition_check(fl, fr, cfg).cross_max();
      return o;
    }, threads);
    double wrong = 0.0, min_right = kInf, cross = 0.0;
    for (const auto& o : out) {
      wrong = std::max(wrong, o.wrong_mass);
      min_right = std::min(min_right, o.right_mass);
      cross = std::max(cross, o.cross);
    }
    r.measured = "wrong-orientation mass max " + detail::fmt(wrong, "%.3g") + ", matching mass min " +
                 detail::fmt(min_right, "%.3g") + ", cross blocks max " + detail::fmt(cross, "%.3g");
    r.expected = "wrong mass 0, cross blocks 0";
    r.tolerance = "mass exact; cross 1e-10";
    r.pass = wrong == 0.0 && min_right > 0.0 && cross <= 1e-10;
    return r;
  });
}

inline CriterionResult norm_ratio() {
  return detail::timed(7, "operator norm ratio for three test functions", [] {
    CriterionResult r;
    HamiltonianConfig cfg;
    cfg.alpha = 0.5;
    HamiltonianOperator h = build(cfg);
    double worst = 0.0;
    for (const char* name : {"gaussian", "x-gaussian", "hermite-gaussian-2"}) {
      double v = operator_norm_ratio(h, io::test_function(name)).ratio;
      worst = std::max(worst, std::abs(v - 1.0));
      r.measured += std::string(r.measured.empty() ? "" : " ") + name + "=" + detail::fmt(v, "%.10g");
    }
    r.expected = "1";
    r.tolerance = "1e-6";
    r.pass = worst <= 1e-6;
    return r;
  });
}

inline CriterionResult free_spectrum() {
  return detail::timed(8, "free spectrum on the circle, n = 256", [] {
    CriterionResult r;
    const double target[7] = {0, 1, 1, 4, 4, 9, 9};
    auto err = [&](int n, bool relative) {
      HamiltonianConfig cfg;
      cfg.grid_n = n;
      auto ev = spectrum(build(cfg));
      double e = 0.0;
      for (int i = 0; i < 7; ++i) {
        double d = std::abs(ev[i].real() - target[i]);
        e = std::max(e, relative ? d / std::max(1.0, target[i]) : d);
      }
      return e;
    };
    double e256 = err(256, false), e128 = err(128, false), rel256 = err(256, true);
    double ratio = e128 / e256;
    r.measured = "max abs err " + detail::fmt(e256, "%.4g") + " (max rel err " + detail::fmt(rel256, "%.3g") +
                 "), err128/err256 = " + detail::fmt(ratio, "%.4g");
    r.expected = "{0,1,1,4,4,9,9}; error ratio 4";
    r.tolerance = "abs 2e-3; ratio within 10%";
    r.pass = e256 <= 2e-3 && std::abs(ratio - 4.0) <= 0.4;
    return r;
  });
}

inline CriterionResult krein_model_check() {
  return detail::timed(9, "Krein model sgn(x) D2, n = 64", [] {
    CriterionResult r;
    const int n = 64;
    HamiltonianOperator a = krein_model(n, 2.0 * std::numbers::pi, Orientation::Left);
    KreinReport rep = krein_check(a, KreinForm::from_orientation(a.grid(), Orientation::Left));
    r.measured = "residual " + detail::fmt(rep.j_symmetry_residual, "%.3g") + ", signature (" +
                 std::to_string(rep.pos_subspace_dim) + ", " + std::to_string(rep.neg_subspace_dim) + ")";
    r.expected = "residual 0, each side n/2 = 32";
    r.tolerance = "residual < 1e-12; +-1";
    r.pass = rep.j_symmetry_residual < 1e-12 && std::abs(rep.pos_subspace_dim - n / 2) <= 1 &&
             std::abs(rep.neg_subspace_dim - n / 2) <= 1 && rep.null_subspace_dim == 0;
    return r;
  });
}

inline CriterionResult trotter_scaling() {
  return detail::timed(10, "Trotter slices vs exponential, first-order scaling", [] {
    CriterionResult r;
    auto t0 = std::chrono::steady_clock::now();
    HamiltonianConfig cfg;
    cfg.alpha = 0.5;
    HamiltonianOperator h = build(cfg);
    Eigen::VectorXd psi0 = normalized_state(h.grid(), SmoothFn::gaussian());
    Eigen::VectorXd ex = propagate(h, psi0, 0.1, Propagation::exponential());
    double e32 = h.grid().l2_norm(propagate(h, psi0, 0.1, Propagation::trotter(32)) - ex);
    double e64 = h.grid().l2_norm(propagate(h, psi0, 0.1, Propagation::trotter(64)) - ex);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double ratio = e32 / e64;
    r.measured = "err32 " + detail::fmt(e32, "%.4g") + ", err64 " + detail::fmt(e64, "%.4g") + ", ratio " +
                 detail::fmt(ratio, "%.4g") + " (" + detail::fmt(secs, "%.2f") + " s)";
    r.expected = "ratio 2";
    r.tolerance = "20%; < 30 s";
    r.pass = std::abs(ratio - 2.0) <= 0.4 && secs < 30.0;
    return r;
  });
}

inline CriterionResult symplectic_suite() {
  return detail::timed(11, "H2 conservation and closedness of dH2", [] {
    CriterionResult r;
    HamiltonianPair h;
    h.alpha = Profile::tanh(0.5);
    double drift = max_energy_drift(flow(h, Flow::H2, PhasePoint{0.0, 1.0}, 1.0, 1e-3));
    // Truncation drift at dt = 1e-3 is ~1e-16, below double rounding, so the
    // dt^4 ratio is measured in 113-bit arithmetic.
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    BasicHamiltonianPair<Quad> hq;
    hq.alpha = BasicProfile<Quad>::tanh(0.5);
    const BasicPhasePoint<Quad> x0{Quad(0), Quad(1)};
    Quad d1 = max_energy_drift(flow(hq, Flow::H2, x0, 1.0, 1e-3));
    Quad d2 = max_energy_drift(flow(hq, Flow::H2, x0, 1.0, 5e-4));
    double drift_ratio = static_cast<double>(d1 / d2);
    // Grids of 17, 33, 65 points on [-1,1]^2 halve the spacing exactly.
    double c17 = check_closed_dH2(h, {}, 17), c33 = check_closed_dH2(h, {}, 33), c65 = check_closed_dH2(h, {}, 65);
    double s1 = c17 / c33, s2 = c33 / c65;
    r.measured = "drift " + detail::fmt(drift, "%.3g") + ", drift ratio " + detail::fmt(drift_ratio, "%.4g") +
                 ", dd residual ratios " + detail::fmt(s1, "%.4g") + " " + detail::fmt(s2, "%.4g");
    r.expected = "drift < 1e-8; drift ratio 16; residual ratio 4 per halving";
    r.tolerance = "drift ratio 25%; residual ratio 10%";
    r.pass = drift < 1e-8 && std::abs(drift_ratio - 16.0) <= 4.0 && std::abs(s1 - 4.0) <= 0.4 && std::abs(s2 - 4.0) <= 0.4;
    return r;
  });
}

inline CriterionResult regularized_delta() {
  return detail::timed(12, "Cauchy-regularized delta against a Gaussian", [] {
    CriterionResult r;
    const SmoothFn phi = SmoothFn::gaussian();
    double e1 = std::abs(regularized_pair(RegularizedDelta(1e-3), phi) - 1.0);
    double e2 = std::abs(regularized_pair(RegularizedDelta(5e-4), phi) - 1.0);
    r.measured = "err(1e-3) " + detail::fmt(e1, "%.4g") + ", err ratio " + detail::fmt(e1 / e2, "%.4g");
    r.expected = "err < 5e-3; ratio 2";
    r.tolerance = "ratio within 10%";
    r.pass = e1 < 5e-3 && std::abs(e1 / e2 - 2.0) <= 0.2;
    return r;
  });
}

inline std::vector<CriterionResult> run_all(unsigned threads = thread_budget()) {
  return {pairing_table(),   single_heaviside_pairing(), euler_characters(), measure_asymmetry(),
          norm_chain(threads), orthogonality(threads),   norm_ratio(),       free_spectrum(),
          krein_model_check(), trotter_scaling(),        symplectic_suite(), regularized_delta()};
}

inline std::string format_line(const CriterionResult& r) {
  char head[32];
  std::snprintf(head, sizeof head, "[%s] %2d ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + " | measured: " + r.measured + " | expected: " + r.expected +
         " | tol: " + r.tolerance;
}

}  // namespace semiflux::acceptance
