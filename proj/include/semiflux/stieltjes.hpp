#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiflux/interval_topology.hpp"
#include "semiflux/piecewise.hpp"
#include "semiflux/quadrature.hpp"

namespace semiflux {

enum class MeasureKind { Lebesgue, StieltjesLeft, StieltjesRight };

inline Orientation orientation_of(MeasureKind k) {
  switch (k) {
    case MeasureKind::StieltjesLeft: return Orientation::Left;
    case MeasureKind::StieltjesRight: return Orientation::Right;
    default: return Orientation::Standard;
  }
}
inline MeasureKind measure_kind_of(Orientation o) {
  switch (o) {
    case Orientation::Left: return MeasureKind::StieltjesLeft;
    case Orientation::Right: return MeasureKind::StieltjesRight;
    default: return MeasureKind::Lebesgue;
  }
}
inline MeasureKind parse_measure_kind(std::string_view s) {
  if (s == "lebesgue") return MeasureKind::Lebesgue;
  return measure_kind_of(parse_orientation(s));
}

struct Atom {
  double point;
  double weight;
};

class TopologyMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Measure generated by a normalized distribution function plus explicit
/// atoms. Stieltjes kinds require the distribution function to be
/// semicontinuous from the kind's side at every breakpoint.
class Measure {
 public:
  static Measure lebesgue() { return Measure(MeasureKind::Lebesgue, PiecewiseFn::smooth(SmoothFn::identity()), {}); }
  static Measure from_distribution(PiecewiseFn f, MeasureKind kind, std::vector<Atom> atoms = {}) {
    return Measure(kind, std::move(f), std::move(atoms));
  }
  static Measure dirac(double point, double weight = 1.0, MeasureKind kind = MeasureKind::Lebesgue) {
    return Measure(kind, PiecewiseFn::constant(0.0), {{point, weight}});
  }

  MeasureKind kind() const { return kind_; }
  const PiecewiseFn& distribution() const { return f_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  Measure(MeasureKind kind, PiecewiseFn f, std::vector<Atom> atoms) : kind_(kind), f_(std::move(f)), atoms_(std::move(atoms)) {
    Orientation o = orientation_of(kind_);
    auto at0 = f_.value_at(0.0);
    double f0 = at0 ? *at0 : (o == Orientation::Right ? f_.right_limit(0.0) : f_.left_limit(0.0));
    if (std::abs(f0) > 1e-12) throw std::invalid_argument("Measure: distribution function must satisfy f(0) = 0");
    if (o != Orientation::Standard)
      for (double b : f_.breakpoints())
        if (!is_semicontinuous_at(f_, b, o))
          throw std::invalid_argument("Measure: distribution function is not " + to_string(o) +
                                      "-semicontinuous at " + format_bound(b));
    for (const auto& a : atoms_)
      if (!std::isfinite(a.point)) throw std::invalid_argument("Measure: atoms at +-inf are not allowed");
  }

  MeasureKind kind_;
  PiecewiseFn f_;
  std::vector<Atom> atoms_;
};

namespace detail {

/// Value of f at an endpoint x of a set piece. An included endpoint uses the
/// assigned value (falling back to the inside limit when unassigned); an
/// excluded endpoint uses the limit from inside the piece. inside = +1 when
/// the piece lies to the right of x.
inline double edge_value(const PiecewiseFn& f, double x, bool included, int inside) {
  if (included)
    if (auto v = f.value_at(x)) return *v;
  return inside > 0 ? f.right_limit(x) : f.left_limit(x);
}

/// Value of f at an atom, read from the continuity side of the kind.
inline double side_value(const PiecewiseFn& f, double x, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::StieltjesLeft: return f.left_limit(x);
    case MeasureKind::StieltjesRight: return f.right_limit(x);
    default: return f.value_or_mean(x);
  }
}

inline IntervalSet prepare(const MeasureKind kind, const IntervalSet& s) {
  Orientation o = orientation_of(kind);
  if (o == Orientation::Standard) return s;
  IntervalSet c = orient_closure(s, o);
  for (const auto& p : c.pieces())
    if (p.is_point())
      throw TopologyMismatch("set contains the isolated point " + format_bound(p.lo) +
                             ", which is not generated by " + to_string(o) + " half-open sets");
  return c;
}

/// Sorted breakpoints of the given functions strictly inside (lo, hi).
inline std::vector<double> cuts(double lo, double hi, std::initializer_list<const PiecewiseFn*> fs) {
  std::vector<double> c;
  for (const auto* f : fs)
    for (double b : f->breakpoints())
      if (b > lo && b < hi) c.push_back(b);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

inline std::vector<double> segment_knots(double lo, double hi, const std::vector<double>& c) {
  std::vector<double> k{lo};
  k.insert(k.end(), c.begin(), c.end());
  k.push_back(hi);
  return k;
}

/// Exact variation of a smooth piece over [u, v] from its monotone segments.
inline double smooth_variation(const SmoothFn& p, double u, double v) {
  double var = 0.0, x = u, fx = p(u);
  for (double c : p.critical_points(u, v)) {
    if (c <= x || c >= v) continue;
    double fc = p(c);
    var += std::abs(fc - fx);
    x = c;
    fx = fc;
  }
  return var + std::abs(p(v) - fx);
}

/// Variation of f over the open interval (lo, hi), both finite.
inline double open_variation(const PiecewiseFn& f, double lo, double hi) {
  auto c = cuts(lo, hi, {&f});
  auto k = segment_knots(lo, hi, c);
  double var = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) var += smooth_variation(f.pieces()[f.piece_right_of(k[i])], k[i], k[i + 1]);
  for (double b : c) {
    double l = f.left_limit(b), r = f.right_limit(b);
    auto v = f.point_values()[*f.breakpoint_index(b)];
    var += v ? std::abs(*v - l) + std::abs(r - *v) : std::abs(r - l);
  }
  return var;
}

inline void require_bounded(const IntervalSet& s, const char* what) {
  if (!s.is_bounded()) throw std::invalid_argument(std::string(what) + ": the set must be bounded");
}

}  // namespace detail

/// Sum over pieces of F(hi*) - F(lo*) with one-sided endpoint evaluation,
/// plus the contained atoms. Under Stieltjes kinds the set is first brought
/// into generating form. An isolated point carries the full jump F(b+) - F(b-).
inline double measure_of(const Measure& m, const IntervalSet& s) {
  IntervalSet t = detail::prepare(m.kind(), s);
  detail::require_bounded(t, "measure_of");
  const PiecewiseFn& f = m.distribution();
  double total = 0.0;
  for (const auto& p : t.pieces()) {
    if (p.is_point())
      total += f.right_limit(p.lo) - f.left_limit(p.lo);
    else
      total += detail::edge_value(f, p.hi, p.hi_inc, -1) - detail::edge_value(f, p.lo, p.lo_inc, +1);
  }
  for (const auto& a : m.atoms())
    if (t.contains(a.point)) total += a.weight;
  return total;
}

/// Exact total variation over a bounded set: monotone segments, jumps,
/// endpoint partial jumps and atoms.
inline double total_variation(const Measure& m, const IntervalSet& s) {
  IntervalSet t = detail::prepare(m.kind(), s);
  detail::require_bounded(t, "total_variation");
  const PiecewiseFn& f = m.distribution();
  double total = 0.0;
  for (const auto& p : t.pieces()) {
    if (p.is_point()) {
      total += std::abs(f.right_limit(p.lo) - f.left_limit(p.lo));
      continue;
    }
    total += std::abs(detail::edge_value(f, p.hi, p.hi_inc, -1) - f.left_limit(p.hi));
    total += std::abs(f.right_limit(p.lo) - detail::edge_value(f, p.lo, p.lo_inc, +1));
    total += detail::open_variation(f, p.lo, p.hi);
  }
  for (const auto& a : m.atoms())
    if (t.contains(a.point)) total += std::abs(a.weight);
  return total;
}

/// Lebesgue-Stieltjes integral of g against m over s: absolutely continuous
/// part by quadrature, jumps and atoms with g read from the kind's side.
inline double integrate(const PiecewiseFn& g, const Measure& m, const IntervalSet& s,
                        const quadrature::Options& opt = {}) {
  IntervalSet t = detail::prepare(m.kind(), s);
  const PiecewiseFn& f = m.distribution();
  const PiecewiseFn df = f.derivative();
  double total = 0.0;
  for (const auto& p : t.pieces()) {
    double lo = p.lo, hi = p.hi;
    if (p.is_point()) {
      total += detail::edge_value(g, lo, true, +1) * (f.right_limit(lo) - f.left_limit(lo));
      continue;
    }
    auto c = detail::cuts(lo, hi, {&g, &f});
    auto k = detail::segment_knots(lo, hi, c);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      std::size_t gi = g.piece_right_of(k[i]), fi = df.piece_right_of(k[i]);
      SmoothFn integrand = g.pieces()[gi] * df.pieces()[fi];
      if (integrand.is_zero()) continue;
      total += quadrature::integrate(integrand, k[i], k[i + 1], opt).value;
    }
    for (double b : detail::cuts(lo, hi, {&f})) {
      double w = f.right_limit(b) - f.left_limit(b);
      if (w != 0.0) total += w * detail::side_value(g, b, m.kind());
    }
    if (std::isfinite(hi)) {
      double w = detail::edge_value(f, hi, p.hi_inc, -1) - f.left_limit(hi);
      if (w != 0.0) total += w * detail::edge_value(g, hi, p.hi_inc, -1);
    }
    if (std::isfinite(lo)) {
      double w = f.right_limit(lo) - detail::edge_value(f, lo, p.lo_inc, +1);
      if (w != 0.0) total += w * detail::edge_value(g, lo, p.lo_inc, +1);
    }
  }
  for (const auto& a : m.atoms())
    if (t.contains(a.point)) total += a.weight * detail::side_value(g, a.point, m.kind());
  return total;
}

inline double integrate(const SmoothFn& g, const Measure& m, const IntervalSet& s) {
  return integrate(PiecewiseFn::smooth(g), m, s);
}

/// <f, phi'> computed piece by piece over the orientation's partition of the
/// line: Left uses pieces (a,b], Right uses [a,b), Standard uses open pieces.
/// On each piece, integration by parts takes f's assigned value at an
/// included endpoint and the limit from inside at an excluded one.
inline double pair_against_test_derivative(const PiecewiseFn& f, const SmoothFn& phi, Orientation o,
                                           const quadrature::Options& opt = {}) {
  if (!phi.decays()) throw std::invalid_argument("test function lacks decay at infinity");
  const auto& b = f.breakpoints();
  double total = 0.0;
  for (std::size_t i = 0; i <= b.size(); ++i) {
    double lo = i == 0 ? -kInf : b[i - 1];
    double hi = i == b.size() ? kInf : b[i];
    bool lo_inc = o == Orientation::Right && std::isfinite(lo);
    bool hi_inc = o == Orientation::Left && std::isfinite(hi);
    const SmoothFn& piece = f.pieces()[i];
    if (std::isfinite(hi)) total += detail::edge_value(f, hi, hi_inc, -1) * phi(hi);
    if (std::isfinite(lo)) total -= detail::edge_value(f, lo, lo_inc, +1) * phi(lo);
    SmoothFn integrand = piece.derivative() * phi;
    if (!integrand.is_zero()) total -= quadrature::integrate(integrand, lo, hi, opt).value;
  }
  return total;
}

/// Atoms of f's jump content visible to the kind: jumps at which f is
/// semicontinuous from the kind's side (every jump for Lebesgue).
inline Measure jump_measure(const PiecewiseFn& f, MeasureKind kind) {
  Orientation o = orientation_of(kind);
  std::vector<Atom> atoms;
  for (const auto& j : jump_content(f)) {
    Classification c = classify(f, j.point);
    bool visible = o == Orientation::Standard || (o == Orientation::Left && c == Classification::LeftSC) ||
                   (o == Orientation::Right && c == Classification::RightSC);
    if (visible) atoms.push_back({j.point, j.jump()});
  }
  return Measure::from_distribution(PiecewiseFn::constant(0.0), kind, std::move(atoms));
}

/// Total mass of the jump content visible to the kind.
inline double oriented_jump_mass(const PiecewiseFn& f, MeasureKind kind) {
  double s = 0.0;
  const Measure m = jump_measure(f, kind);
  for (const auto& a : m.atoms()) s += std::abs(a.weight);
  return s;
}

// ---- norms -------------------------------------------------------------

struct Norms {
  double sup = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double lp = 0.0;
  double p = 4.0;
  double bv = 0.0;
};

inline double sup_norm(const PiecewiseFn& f, const IntervalSet& s) {
  double m = 0.0;
  auto take = [&](double v) { m = std::max(m, std::abs(v)); };
  for (const auto& p : s.pieces()) {
    double lo = p.lo, hi = p.hi;
    if (p.is_point()) {
      take(detail::edge_value(f, lo, true, +1));
      continue;
    }
    if (std::isfinite(lo)) {
      take(detail::edge_value(f, lo, p.lo_inc, +1));
      take(f.right_limit(lo));
    } else {
      take(f.pieces().front().abs_limit(-1));
    }
    if (std::isfinite(hi)) {
      take(detail::edge_value(f, hi, p.hi_inc, -1));
      take(f.left_limit(hi));
    } else {
      take(f.pieces().back().abs_limit(+1));
    }
    auto c = detail::cuts(lo, hi, {&f});
    for (double b : c) {
      take(f.left_limit(b));
      take(f.right_limit(b));
      if (auto v = f.value_at(b)) take(*v);
    }
    auto k = detail::segment_knots(lo, hi, c);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      const SmoothFn& piece = f.pieces()[f.piece_right_of(k[i])];
      for (double x : piece.critical_points(k[i], k[i + 1]))
        if (x > k[i] && x < k[i + 1]) take(piece(x));
    }
  }
  return m;
}

inline double lp_norm(const PiecewiseFn& f, const IntervalSet& s, double p, const quadrature::Options& opt = {}) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double acc = 0.0;
  for (const auto& piece : s.pieces()) {
    if (piece.is_point()) continue;
    auto c = detail::cuts(piece.lo, piece.hi, {&f});
    auto k = detail::segment_knots(piece.lo, piece.hi, c);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      const SmoothFn& g = f.pieces()[f.piece_right_of(k[i])];
      if (g.is_zero()) continue;
      // Split at sign changes so |g|^p is smooth on every panel.
      std::vector<double> knots{k[i]};
      if (g.terms().size() == 1 && std::isfinite(k[i]) && std::isfinite(k[i + 1]))
        for (double z : g.terms()[0].poly.roots_in(k[i], k[i + 1]))
          if (z > knots.back() && z < k[i + 1]) knots.push_back(z);
      knots.push_back(k[i + 1]);
      auto integrand = [&](double x) { return std::pow(std::abs(g(x)), p); };
      for (std::size_t j = 0; j + 1 < knots.size(); ++j)
        acc += quadrature::integrate(integrand, knots[j], knots[j + 1], opt).value;
    }
  }
  return std::pow(acc, 1.0 / p);
}

/// |f(left edge)| + V_s(f). The variation runs over the pieces of s and the
/// transitions across gaps between consecutive pieces.
inline double bv_norm(const PiecewiseFn& f, const IntervalSet& s) {
  detail::require_bounded(s, "bv_norm");
  if (s.empty()) return 0.0;
  double var = 0.0;
  std::optional<double> prev_edge;
  double first = 0.0;
  for (const auto& p : s.pieces()) {
    double lo_v = detail::edge_value(f, p.lo, p.lo_inc || p.is_point(), +1);
    if (!prev_edge) first = lo_v;
    else var += std::abs(lo_v - *prev_edge);
    if (p.is_point()) {
      prev_edge = lo_v;
      continue;
    }
    double hi_v = detail::edge_value(f, p.hi, p.hi_inc, -1);
    var += std::abs(f.right_limit(p.lo) - lo_v) + detail::open_variation(f, p.lo, p.hi) + std::abs(hi_v - f.left_limit(p.hi));
    prev_edge = hi_v;
  }
  return std::abs(first) + var;
}

inline Norms norms(const PiecewiseFn& f, const IntervalSet& s, double p = 4.0) {
  Norms n;
  n.p = p;
  n.bv = bv_norm(f, s);
  n.sup = sup_norm(f, s);
  n.l1 = lp_norm(f, s, 1.0);
  n.l2 = lp_norm(f, s, 2.0);
  n.lp = lp_norm(f, s, p);
  return n;
}

}  // namespace semiflux
