#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace semiflux::quadrature {

struct Options {
  double abs_tol = 1e-10;
  std::size_t max_segments = 20000;
  double tail_increment = 1e-12;  // stop growing a tail once a chunk adds less than this
  double max_radius = 1e9;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// One 15-point Kronrod panel on [a,b] with the embedded 7-point Gauss
/// estimate used for the error.
template <class F>
Result kronrod15(const F& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& x = gauss_kronrod<double, 15>::abscissa();
  const auto& wk = gauss_kronrod<double, 15>::weights();
  const auto& wg = gauss<double, 7>::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double f0 = f(c);
  double k = f0 * wk[0];
  double g = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    double fp = f(c + h * x[i]), fm = f(c - h * x[i]);
    k += wk[i] * (fp + fm);
    if (i % 2 == 0) g += wg[i / 2] * (fp + fm);
  }
  return {k * h, std::abs((k - g) * h)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod on a finite interval with a global absolute error
/// target: the panel with the largest error estimate is bisected until the
/// summed estimate drops below abs_tol.
template <class F>
Result integrate_finite(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {};
  if (!(std::isfinite(a) && std::isfinite(b))) throw std::invalid_argument("integrate_finite: infinite limit");
  if (a > b) {
    Result r = integrate_finite(f, b, a, opt);
    return {-r.value, r.error};
  }
  struct Panel {
    double a, b;
    Result r;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Panel> heap;
  Result r0 = detail::kronrod15(f, a, b);
  if (!std::isfinite(r0.value)) throw QuadratureError("integrand is not finite on the interval");
  heap.push({a, b, r0});
  double err = r0.error;
  std::size_t count = 1;
  const double floor_eps = 50.0 * std::numeric_limits<double>::epsilon();
  while (err > opt.abs_tol) {
    Panel p = heap.top();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b) || p.r.error <= floor_eps * std::abs(p.r.value)) break;
    heap.pop();
    Result left = detail::kronrod15(f, p.a, m), right = detail::kronrod15(f, m, p.b);
    if (!std::isfinite(left.value) || !std::isfinite(right.value))
      throw QuadratureError("integrand is not finite on the interval");
    err += left.error + right.error - p.r.error;
    heap.push({p.a, m, left});
    heap.push({m, p.b, right});
    if (++count > opt.max_segments) throw QuadratureError("adaptive quadrature did not reach its tolerance");
  }
  // Sum in a fixed order so the result does not depend on heap layout.
  std::vector<Panel> panels;
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  Result out;
  for (const auto& p : panels) {
    out.value += p.r.value;
    out.error += p.r.error;
  }
  return out;
}

/// Integral from a towards +inf (direction > 0) or -inf. Chunks double in
/// length until two consecutive chunks each add less than tail_increment.
template <class F>
Result integrate_tail(const F& f, double a, int direction, const Options& opt = {}) {
  Result total;
  double width = 1.0, start = a;
  int quiet = 0;
  while (quiet < 2) {
    double end = start + direction * width;
    Result c = direction > 0 ? integrate_finite(f, start, end, opt) : integrate_finite(f, end, start, opt);
    total.value += c.value;
    total.error += c.error;
    quiet = std::abs(c.value) < opt.tail_increment ? quiet + 1 : 0;
    start = end;
    width *= 2.0;
    if (std::abs(start - a) > opt.max_radius)
      throw QuadratureError("improper integral did not converge under truncation doubling");
  }
  return total;
}

/// Integral over [a, b] where either end may be infinite.
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {};
  if (a > b) {
    Result r = integrate(f, b, a, opt);
    return {-r.value, r.error};
  }
  bool fa = std::isfinite(a), fb = std::isfinite(b);
  if (fa && fb) return integrate_finite(f, a, b, opt);
  if (fa) return integrate_tail(f, a, +1, opt);
  if (fb) return integrate_tail(f, b, -1, opt);
  Result l = integrate_tail(f, 0.0, -1, opt), r = integrate_tail(f, 0.0, +1, opt);
  return {l.value + r.value, l.error + r.error};
}

}  // namespace semiflux::quadrature
