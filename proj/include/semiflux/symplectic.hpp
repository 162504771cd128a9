#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiflux {

/// Scalar function of q with analytic first and second derivatives. The
/// scalar type is a parameter so trajectories can be run in extended
/// precision when rounding would hide truncation effects.
template <class Real = double>
struct BasicProfile {
  std::function<Real(Real)> value;
  std::function<Real(Real)> d1;
  std::function<Real(Real)> d2;

  static BasicProfile constant(double c) {
    return {[c](Real) { return Real(c); }, [](Real) { return Real(0); }, [](Real) { return Real(0); }};
  }
  /// Sum of coeffs[k] q^k.
  static BasicProfile polynomial(std::vector<double> coeffs) {
    auto eval = [](const std::vector<double>& c, Real q) {
      Real r = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + Real(*it);
      return r;
    };
    std::vector<double> d, dd;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * double(k));
    for (std::size_t k = 1; k < d.size(); ++k) dd.push_back(d[k] * double(k));
    return {[=](Real q) { return eval(coeffs, q); }, [=](Real q) { return eval(d, q); }, [=](Real q) { return eval(dd, q); }};
  }
  /// amplitude * tanh(q / width)
  static BasicProfile tanh(double amplitude = 0.5, double width = 1.0) {
    const Real a(amplitude), w(width);
    return {[=](Real q) {
              using std::tanh;
              return Real(a * tanh(q / w));
            },
            [=](Real q) {
              using std::cosh;
              Real s = 1 / cosh(q / w);
              return Real(a / w * s * s);
            },
            [=](Real q) {
              using std::cosh;
              using std::tanh;
              Real s = 1 / cosh(q / w);
              return Real(-2 * a / (w * w) * tanh(q / w) * s * s);
            }};
  }
};

using Profile = BasicProfile<double>;

template <class Real = double>
struct BasicPhasePoint {
  Real q = 0;
  Real p = 0;
};
using PhasePoint = BasicPhasePoint<double>;

/// H1 = p^2/2 + theta'(q),  H2 = (1 - alpha(q)) p^2 / 2.
template <class Real = double>
struct BasicHamiltonianPair {
  BasicProfile<Real> theta = BasicProfile<Real>::constant(0.0);
  BasicProfile<Real> alpha = BasicProfile<Real>::constant(0.0);
};
using HamiltonianPair = BasicHamiltonianPair<double>;

enum class Flow { H1, H2 };

inline Flow parse_flow(const std::string& s) {
  if (s == "H1" || s == "h1") return Flow::H1;
  if (s == "H2" || s == "h2") return Flow::H2;
  throw std::invalid_argument("unknown Hamiltonian '" + s + "' (expected H1 or H2)");
}

template <class Real = double>
struct BasicVelocity {
  Real dq = 0;
  Real dp = 0;
};

/// Reference equations of motion. For H2 the momentum equation reads
/// dp/dt = -alpha'(q) p^2 / 2, the negative of -dH2/dq.
template <class Real>
BasicVelocity<Real> eom(const BasicHamiltonianPair<Real>& h, Flow which, BasicPhasePoint<Real> x) {
  if (which == Flow::H1) return {x.p, -h.theta.d2(x.q)};
  return {(1 - h.alpha.value(x.q)) * x.p, -h.alpha.d1(x.q) * x.p * x.p / 2};
}

/// Hamilton's equations (dH/dp, -dH/dq) from the analytic derivatives.
template <class Real>
BasicVelocity<Real> vector_field(const BasicHamiltonianPair<Real>& h, Flow which, BasicPhasePoint<Real> x) {
  if (which == Flow::H1) return {x.p, -h.theta.d2(x.q)};
  return {(1 - h.alpha.value(x.q)) * x.p, h.alpha.d1(x.q) * x.p * x.p / 2};
}

enum class FlowField { Hamiltonian, FlippedCoupling };

template <class Real>
Real energy(const BasicHamiltonianPair<Real>& h, Flow which, BasicPhasePoint<Real> x) {
  if (which == Flow::H1) return x.p * x.p / 2 + h.theta.d1(x.q);
  return (1 - h.alpha.value(x.q)) * x.p * x.p / 2;
}

/// Raised when a trajectory reaches alpha >= 1, where the effective mass
/// 1 - alpha stops being positive.
class DomainExit : public std::runtime_error {
 public:
  DomainExit(double t, double q)
      : std::runtime_error("trajectory left the working domain (alpha >= 1) at t = " + std::to_string(t) +
                           ", q = " + std::to_string(q)),
        time(t) {}
  double time;
};

template <class Real = double>
struct BasicTrajectorySample {
  Real t, q, p, H;
};
using TrajectorySample = BasicTrajectorySample<double>;

/// Classical RK4 with n = ceil(t_end/dt) equal steps. Every stride-th state
/// is recorded, together with the final one.
template <class Real>
std::vector<BasicTrajectorySample<Real>> flow(const BasicHamiltonianPair<Real>& h, Flow which, BasicPhasePoint<Real> x0,
                                              double t_end, double dt, std::size_t stride = 1,
                                              FlowField field = FlowField::Hamiltonian) {
  using Point = BasicPhasePoint<Real>;
  using Vel = BasicVelocity<Real>;
  if (!(dt > 0.0)) throw std::invalid_argument("flow: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("flow: t_end must be positive");
  if (stride == 0) stride = 1;
  const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const Real step = Real(t_end) / Real(n);
  auto check = [&](const Real& t, const Point& x) {
    if (which == Flow::H2 && !(h.alpha.value(x.q) < 1)) throw DomainExit(static_cast<double>(t), static_cast<double>(x.q));
  };
  auto rhs = [&](const Point& y) { return field == FlowField::Hamiltonian ? vector_field(h, which, y) : eom(h, which, y); };
  auto shift = [](const Point& a, const Vel& v, const Real& s) { return Point{a.q + s * v.dq, a.p + s * v.dp}; };
  std::vector<BasicTrajectorySample<Real>> out;
  Point x = x0;
  check(Real(0), x);
  out.push_back({Real(0), x.q, x.p, energy(h, which, x)});
  for (std::size_t i = 0; i < n; ++i) {
    const Real t = step * Real(i), half = step / 2;
    Vel k1 = rhs(x);
    Point x2 = shift(x, k1, half);
    check(t + half, x2);
    Vel k2 = rhs(x2);
    Point x3 = shift(x, k2, half);
    check(t + half, x3);
    Vel k3 = rhs(x3);
    Point x4 = shift(x, k3, step);
    check(t + step, x4);
    Vel k4 = rhs(x4);
    x.q += step / 6 * (k1.dq + 2 * k2.dq + 2 * k3.dq + k4.dq);
    x.p += step / 6 * (k1.dp + 2 * k2.dp + 2 * k3.dp + k4.dp);
    const Real tn = step * Real(i + 1);
    check(tn, x);
    if ((i + 1) % stride == 0 || i + 1 == n) out.push_back({tn, x.q, x.p, energy(h, which, x)});
  }
  return out;
}

template <class Real>
Real max_energy_drift(const std::vector<BasicTrajectorySample<Real>>& traj) {
  using std::abs;
  Real d = 0;
  for (const auto& s : traj) {
    Real e = abs(s.H - traj.front().H);
    if (e > d) d = e;
  }
  return d;
}

struct PhaseRect {
  double q_lo = -1.0, q_hi = 1.0, p_lo = -1.0, p_hi = 1.0;
};

/// Mixed-partial mismatch of H2 on an n-by-n grid: the analytic components
/// dH2/dq and dH2/dp are cross-differentiated by central differences with a
/// step equal to the grid spacing, and the largest |d_p(dH2/dq) - d_q(dH2/dp)|
/// is returned.
inline double check_closed_dH2(const HamiltonianPair& h, const PhaseRect& r, int n) {
  if (n < 4) throw std::invalid_argument("check_closed_dH2: grid must be at least 4 x 4");
  const double hq = (r.q_hi - r.q_lo) / (n - 1), hp = (r.p_hi - r.p_lo) / (n - 1);
  auto dH_dq = [&](double q, double p) { return -0.5 * h.alpha.d1(q) * p * p; };
  auto dH_dp = [&](double q, double p) { return (1.0 - h.alpha.value(q)) * p; };
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double q = r.q_lo + i * hq, p = r.p_lo + j * hp;
      double a = (dH_dq(q, p + hp) - dH_dq(q, p - hp)) / (2.0 * hp);
      double b = (dH_dp(q + hq, p) - dH_dp(q - hq, p)) / (2.0 * hq);
      worst = std::max(worst, std::abs(a - b));
    }
  return worst;
}

/// p dH1/dp - p dH2/dp = alpha(q) p^2.
inline double poincare_residual(const HamiltonianPair& h, PhasePoint x) {
  return x.p * x.p - x.p * (1.0 - h.alpha.value(x.q)) * x.p;
}

}  // namespace semiflux
