#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "semiflux/piecewise.hpp"
#include "semiflux/quadrature.hpp"
#include "semiflux/stieltjes.hpp"

namespace semiflux {

/// Weighted delta (order 0) or delta' (order 1) at a point.
struct DistAtom {
  double point;
  unsigned order;
  double weight;
};

/// Regular part plus finitely many point atoms. Atoms sharing a point and
/// an order are merged.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(PiecewiseFn regular, std::vector<DistAtom> atoms = {}) : regular_(std::move(regular)) {
    for (const auto& a : atoms) {
      if (a.order > 1) throw std::invalid_argument("Distribution: atoms of order >= 2 are not supported");
      if (!std::isfinite(a.point)) throw std::invalid_argument("Distribution: atoms at +-inf are not allowed");
      auto it = std::find_if(atoms_.begin(), atoms_.end(),
                             [&](const DistAtom& b) { return b.point == a.point && b.order == a.order; });
      if (it != atoms_.end()) it->weight += a.weight;
      else atoms_.push_back(a);
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const DistAtom& x, const DistAtom& y) {
      return x.point != y.point ? x.point < y.point : x.order < y.order;
    });
  }

  static Distribution delta(double point = 0.0, double weight = 1.0) { return Distribution(PiecewiseFn::constant(0.0), {{point, 0, weight}}); }
  static Distribution delta_prime(double point = 0.0, double weight = 1.0) { return Distribution(PiecewiseFn::constant(0.0), {{point, 1, weight}}); }

  const PiecewiseFn& regular() const { return regular_; }
  const std::vector<DistAtom>& atoms() const { return atoms_; }

 private:
  PiecewiseFn regular_ = PiecewiseFn::constant(0.0);
  std::vector<DistAtom> atoms_;
};

inline Distribution add(const Distribution& a, const Distribution& b) {
  std::vector<DistAtom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return Distribution(add(a.regular(), b.regular()), std::move(atoms));
}

inline Distribution scale(double c, const Distribution& d) {
  std::vector<DistAtom> atoms = d.atoms();
  for (auto& a : atoms) a.weight *= c;
  return Distribution(scale(c, d.regular()), std::move(atoms));
}

/// Parity map: regular part reflected, atoms moved to -x with the weight of
/// an order-k atom multiplied by (-1)^k.
inline Distribution reflect(const Distribution& d) {
  std::vector<DistAtom> atoms;
  for (const auto& a : d.atoms()) atoms.push_back({-a.point, a.order, a.order % 2 ? -a.weight : a.weight});
  return Distribution(reflect(d.regular()), std::move(atoms));
}

inline double pair(const Distribution& d, const SmoothFn& phi) {
  double total = 0.0;
  for (const auto& a : d.atoms()) {
    double v = a.order == 0 ? phi(a.point) : phi.derivative()(a.point);
    total += (a.order % 2 ? -1.0 : 1.0) * a.weight * v;
  }
  bool regular_zero = std::all_of(d.regular().pieces().begin(), d.regular().pieces().end(),
                                  [](const SmoothFn& p) { return p.is_zero(); });
  if (!regular_zero)
    total += integrate(mul(d.regular(), PiecewiseFn::smooth(phi)), Measure::lebesgue(), IntervalSet{Interval::real_line()});
  return total;
}

/// Sum of w * H_o(x - p) over the order-0 atoms.
inline PiecewiseFn primitive(const Distribution& d, Orientation o) {
  require_one_sided(o, "primitive");
  bool regular_zero = std::all_of(d.regular().pieces().begin(), d.regular().pieces().end(),
                                  [](const SmoothFn& p) { return p.is_zero(); });
  if (!regular_zero) throw std::invalid_argument("primitive: only purely atomic distributions are supported");
  PiecewiseFn out = PiecewiseFn::constant(0.0).with_hint(o);
  for (const auto& a : d.atoms()) {
    if (a.order != 0) throw std::invalid_argument("primitive: atoms of order >= 1 have no primitive here");
    out = add(out, scale(a.weight, shift(heaviside(o), a.point)));
  }
  return out.with_hint(o);
}

/// Primitive shifted by half of each atom weight, so delta at 0 maps to sgn_o / 2.
inline PiecewiseFn half_sgn_primitive(const Distribution& d, Orientation o) {
  double total = 0.0;
  for (const auto& a : d.atoms()) total += a.weight;
  return add(primitive(d, o), PiecewiseFn::constant(-0.5 * total)).with_hint(o);
}

/// Classical derivative of the pieces plus one delta per jump, weighted by
/// the difference of the two-sided limits.
inline Distribution distributional_derivative(const PiecewiseFn& f, Orientation o) {
  std::vector<DistAtom> atoms;
  for (const auto& j : jump_content(f)) atoms.push_back({j.point, 0, j.jump()});
  return Distribution(f.derivative().with_hint(o), std::move(atoms));
}

/// Poisson (Cauchy) kernel (1/pi) eps / (x^2 + eps^2).
struct RegularizedDelta {
  double epsilon;
  explicit RegularizedDelta(double eps) : epsilon(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("RegularizedDelta: epsilon must be positive");
  }
  double operator()(double x) const { return epsilon / (std::numbers::pi * (x * x + epsilon * epsilon)); }
};

inline double regularized_pair(const RegularizedDelta& r, const SmoothFn& phi) {
  if (!phi.decays()) throw std::invalid_argument("test function lacks decay at infinity");
  auto integrand = [&](double x) { return r(x) * phi(x); };
  // Geometric panels resolve the kernel peak, which has width eps.
  std::vector<double> knots{0.0};
  for (double x = r.epsilon; x < 1.0; x *= 4.0) knots.push_back(x);
  knots.push_back(std::max(1.0, knots.back() * 4.0));
  double total = 0.0;
  for (int side : {-1, 1}) {
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      total += quadrature::integrate_finite(integrand, side * knots[i], side * knots[i + 1]).value * side;
    total += quadrature::integrate_tail(integrand, side * knots.back(), side).value;
  }
  return total;
}

/// Components of the graph over the line minus the jump atoms of the
/// derivative. Removable discontinuities are healed; under a one-sided
/// orientation a completely discontinuous point is moved onto its
/// continuity-side limit. A jump that is semicontinuous from the
/// orientation's side keeps its two sides in one component.
inline int euler_character(const PiecewiseFn& f, Orientation o) {
  PiecewiseFn g = heal_removable(f);
  if (o != Orientation::Standard) {
    std::vector<std::optional<double>> v = g.point_values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      double b = g.breakpoints()[i];
      if (classify(g, b) == Classification::CompletelyDiscontinuous)
        v[i] = o == Orientation::Left ? g.left_limit(b) : g.right_limit(b);
    }
    g = g.with_values(std::move(v));
  }
  int components = 1;
  for (std::size_t i = 0; i < g.breakpoints().size(); ++i) {
    double b = g.breakpoints()[i], l = g.left_limit(b), r = g.right_limit(b);
    if (nearly_equal(l, r) || is_semicontinuous_at(g, b, o)) continue;
    const auto& v = g.point_values()[i];
    bool isolated = v && !nearly_equal(*v, l) && !nearly_equal(*v, r);
    components += isolated ? 2 : 1;
  }
  return components - static_cast<int>(distributional_derivative(g, o).atoms().size());
}

}  // namespace semiflux
