#pragma once
// Independent reference computations used to check the library. They avoid
// the library's own quadrature and integration-by-parts code paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Simpson integral that treats each listed breakpoint as a panel edge and
/// samples strictly inside the pieces, so point values never enter.
inline double simpson_pieces(const std::function<double(double)>& f, std::vector<double> cuts, int n = 4000) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1], eps = 1e-13 * std::max(1.0, std::abs(b - a));
    total += simpson(f, a + eps, b - eps, n);
  }
  return total;
}

/// Total variation of a function sampled on a fine partition, including
/// the given special points (where the sampled value is the assigned one).
inline double partition_variation(const std::function<double(double)>& f, double a, double b,
                                  const std::vector<double>& special, int n = 200000) {
  std::vector<double> x;
  for (int i = 0; i <= n; ++i) x.push_back(a + (b - a) * i / n);
  for (double s : special)
    if (s >= a && s <= b) {
      x.push_back(s);
      x.push_back(s - 1e-9);
      x.push_back(s + 1e-9);
    }
  std::sort(x.begin(), x.end());
  std::vector<double> y;
  for (double t : x)
    if (t >= a && t <= b) y.push_back(f(t));
  double v = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) v += std::abs(y[i] - y[i - 1]);
  return v;
}

/// Midpoint Riemann sum of |f|^p, raised to 1/p.
inline double riemann_lp(const std::function<double(double)>& f, double a, double b, double p, int n = 400000) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(std::abs(f(a + (i + 0.5) * h)), p);
  return std::pow(s * h, 1.0 / p);
}

/// Pairing of the Poisson kernel of width eps with exp(-x^2).
inline double cauchy_gaussian(double eps) { return std::exp(eps * eps) * std::erfc(eps); }

/// Eigenvalues of -a^2 D2 on an n-point periodic grid of length L.
inline std::vector<double> free_grid_eigenvalues(double a, int n, double L) {
  std::vector<double> ev;
  const double h = L / n;
  for (int k = 0; k < n; ++k) {
    const double s = std::sin(std::numbers::pi * k / n);
    ev.push_back(a * a * 4.0 / (h * h) * s * s);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Leading central-difference truncation of d_q(dH2/dp) for H2 = (1-alpha)p^2/2:
/// (h^2/6) |alpha'''(q)| |p|.
inline double closedness_truncation(double alpha3, double p, double h) { return h * h / 6.0 * std::abs(alpha3) * std::abs(p); }

}  // namespace oracle
