#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiflux/interval_topology.hpp"
#include "semiflux/orientation.hpp"
#include "semiflux/smooth.hpp"

namespace semiflux {

enum class Classification { Continuous, LeftSC, RightSC, CompletelyDiscontinuous };

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::Continuous: return "continuous";
    case Classification::LeftSC: return "left-semicontinuous";
    case Classification::RightSC: return "right-semicontinuous";
    default: return "completely-discontinuous";
  }
}

inline bool nearly_equal(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Smooth pieces separated by finite breakpoints, with an optional value
/// assigned at each breakpoint. pieces[i] lives on (b[i-1], b[i]).
class PiecewiseFn {
 public:
  PiecewiseFn() : pieces_{SmoothFn{}} {}
  PiecewiseFn(std::vector<double> breakpoints, std::vector<SmoothFn> pieces,
              std::vector<std::optional<double>> values, Orientation hint = Orientation::Standard)
      : bps_(std::move(breakpoints)), pieces_(std::move(pieces)), values_(std::move(values)), hint_(hint) {
    if (pieces_.size() != bps_.size() + 1) throw std::invalid_argument("PiecewiseFn: need one more piece than breakpoints");
    if (values_.size() != bps_.size()) throw std::invalid_argument("PiecewiseFn: one value slot per breakpoint");
    for (std::size_t i = 0; i < bps_.size(); ++i) {
      if (!std::isfinite(bps_[i])) throw std::invalid_argument("PiecewiseFn: breakpoints must be finite");
      if (i > 0 && !(bps_[i - 1] < bps_[i])) throw std::invalid_argument("PiecewiseFn: breakpoints must increase strictly");
    }
  }

  static PiecewiseFn smooth(SmoothFn f) { return PiecewiseFn({}, {std::move(f)}, {}); }
  static PiecewiseFn constant(double c) { return smooth(SmoothFn::constant(c)); }

  const std::vector<double>& breakpoints() const { return bps_; }
  const std::vector<SmoothFn>& pieces() const { return pieces_; }
  const std::vector<std::optional<double>>& point_values() const { return values_; }
  Orientation orientation_hint() const { return hint_; }

  std::optional<std::size_t> breakpoint_index(double x) const {
    auto it = std::lower_bound(bps_.begin(), bps_.end(), x);
    if (it != bps_.end() && *it == x) return std::size_t(it - bps_.begin());
    return std::nullopt;
  }
  /// Piece covering the open region just right of x (or containing x).
  std::size_t piece_right_of(double x) const { return std::size_t(std::upper_bound(bps_.begin(), bps_.end(), x) - bps_.begin()); }
  /// Piece covering the open region just left of x.
  std::size_t piece_left_of(double x) const { return std::size_t(std::lower_bound(bps_.begin(), bps_.end(), x) - bps_.begin()); }

  /// Value at x; nullopt at an unassigned breakpoint.
  std::optional<double> value_at(double x) const {
    if (auto i = breakpoint_index(x)) return values_[*i];
    return pieces_[piece_right_of(x)](x);
  }
  double operator()(double x) const {
    auto v = value_at(x);
    if (!v) throw std::domain_error("PiecewiseFn: no value assigned at breakpoint " + format_bound(x));
    return *v;
  }
  double left_limit(double x) const {
    if (x == -kInf) throw std::domain_error("left limit at -inf");
    return pieces_[piece_left_of(x)](x);
  }
  double right_limit(double x) const {
    if (x == kInf) throw std::domain_error("right limit at +inf");
    return pieces_[piece_right_of(x)](x);
  }
  /// Assigned value if present, otherwise the mean of the one-sided limits.
  double value_or_mean(double x) const {
    if (auto v = value_at(x)) return *v;
    return 0.5 * (left_limit(x) + right_limit(x));
  }

  /// Classical derivative of every piece; breakpoint values unassigned.
  PiecewiseFn derivative() const {
    std::vector<SmoothFn> d;
    for (const auto& p : pieces_) d.push_back(p.derivative());
    return PiecewiseFn(bps_, std::move(d), std::vector<std::optional<double>>(bps_.size()), hint_);
  }

  PiecewiseFn with_hint(Orientation o) const {
    PiecewiseFn r = *this;
    r.hint_ = o;
    return r;
  }
  PiecewiseFn with_values(std::vector<std::optional<double>> v) const {
    return PiecewiseFn(bps_, pieces_, std::move(v), hint_);
  }

 private:
  std::vector<double> bps_;
  std::vector<SmoothFn> pieces_;
  std::vector<std::optional<double>> values_;
  Orientation hint_ = Orientation::Standard;
};

// ---- constructors -------------------------------------------------------

inline PiecewiseFn heaviside(Orientation o) {
  require_one_sided(o, "heaviside");
  double at0 = o == Orientation::Left ? 0.0 : 1.0;
  return PiecewiseFn({0.0}, {SmoothFn{}, SmoothFn::constant(1.0)}, {at0}, o);
}

/// Indicator of an interval; endpoint values follow the inclusion flags.
inline PiecewiseFn indicator(const Interval& iv) {
  if (iv.is_empty()) return PiecewiseFn::constant(0.0);
  if (iv.is_point()) return PiecewiseFn({double(iv.lo)}, {SmoothFn{}, SmoothFn{}}, {1.0});
  std::vector<double> b;
  std::vector<SmoothFn> p{SmoothFn{}};
  std::vector<std::optional<double>> v;
  if (iv.lo.is_finite()) {
    b.push_back(iv.lo);
    v.push_back(iv.lo_inc ? 1.0 : 0.0);
    p.push_back(SmoothFn::constant(1.0));
  } else {
    p.back() = SmoothFn::constant(1.0);
  }
  if (iv.hi.is_finite()) {
    b.push_back(iv.hi);
    v.push_back(iv.hi_inc ? 1.0 : 0.0);
    p.push_back(SmoothFn{});
  }
  Orientation hint = Orientation::Standard;
  if (!iv.lo_inc && iv.hi_inc) hint = Orientation::Left;
  if (iv.lo_inc && !iv.hi_inc) hint = Orientation::Right;
  return PiecewiseFn(std::move(b), std::move(p), std::move(v), hint);
}

/// Indicator of (lo, hi) with both endpoint values left unassigned.
inline PiecewiseFn indicator_unassigned(double lo, double hi) {
  PiecewiseFn f = indicator(Interval::open(lo, hi));
  return f.with_values(std::vector<std::optional<double>>(f.breakpoints().size()));
}

/// Two-sided sign: -1 left of 0, +1 right of 0, no value at 0.
inline PiecewiseFn sgn_two_sided() {
  return PiecewiseFn({0.0}, {SmoothFn::constant(-1.0), SmoothFn::constant(1.0)}, {std::nullopt});
}

// ---- algebra ------------------------------------------------------------

inline PiecewiseFn reflect(const PiecewiseFn& f) {
  std::vector<double> b;
  std::vector<SmoothFn> p;
  std::vector<std::optional<double>> v;
  for (auto it = f.breakpoints().rbegin(); it != f.breakpoints().rend(); ++it) b.push_back(-*it);
  for (auto it = f.pieces().rbegin(); it != f.pieces().rend(); ++it) p.push_back(it->reflected());
  for (auto it = f.point_values().rbegin(); it != f.point_values().rend(); ++it) v.push_back(*it);
  return PiecewiseFn(std::move(b), std::move(p), std::move(v), mirror(f.orientation_hint()));
}

namespace detail {

template <class Op, class ValueOp>
PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g, Op op, ValueOp vop) {
  std::vector<double> b = f.breakpoints();
  b.insert(b.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<SmoothFn> p;
  p.push_back(op(f.pieces().front(), g.pieces().front()));
  for (double x : b) p.push_back(op(f.pieces()[f.piece_right_of(x)], g.pieces()[g.piece_right_of(x)]));
  std::vector<std::optional<double>> v;
  for (double x : b) {
    auto fv = f.value_at(x), gv = g.value_at(x);
    v.push_back(fv && gv ? std::optional<double>(vop(*fv, *gv)) : std::nullopt);
  }
  Orientation hint = f.orientation_hint() == g.orientation_hint() ? f.orientation_hint() : Orientation::Standard;
  return PiecewiseFn(std::move(b), std::move(p), std::move(v), hint);
}

}  // namespace detail

inline PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::combine(f, g, [](const SmoothFn& a, const SmoothFn& b) { return a + b; },
                         [](double a, double b) { return a + b; });
}
inline PiecewiseFn mul(const PiecewiseFn& f, const PiecewiseFn& g) {
  return detail::combine(f, g, [](const SmoothFn& a, const SmoothFn& b) { return a * b; },
                         [](double a, double b) { return a * b; });
}
inline PiecewiseFn scale(double c, const PiecewiseFn& f) {
  std::vector<SmoothFn> p;
  for (const auto& x : f.pieces()) p.push_back(c * x);
  std::vector<std::optional<double>> v;
  for (const auto& x : f.point_values()) v.push_back(x ? std::optional<double>(c * *x) : std::nullopt);
  return PiecewiseFn(f.breakpoints(), std::move(p), std::move(v), f.orientation_hint());
}
inline PiecewiseFn subtract(const PiecewiseFn& f, const PiecewiseFn& g) { return add(f, scale(-1.0, g)); }

/// f(x - s)
inline PiecewiseFn shift(const PiecewiseFn& f, double s) {
  std::vector<double> b;
  for (double x : f.breakpoints()) b.push_back(x + s);
  std::vector<SmoothFn> p;
  for (const auto& x : f.pieces()) p.push_back(x.shifted(s));
  return PiecewiseFn(std::move(b), std::move(p), f.point_values(), f.orientation_hint());
}

/// sgn_L(x) = H_L(x) - H_R(-x),  sgn_R(x) = H_R(x) - H_L(-x).
inline PiecewiseFn sgn(Orientation o) {
  require_one_sided(o, "sgn");
  PiecewiseFn r = subtract(heaviside(o), reflect(heaviside(mirror(o))));
  return r.with_hint(o);
}

// ---- classification and extension -------------------------------------

inline Classification classify(const PiecewiseFn& f, double at) {
  auto idx = f.breakpoint_index(at);
  if (!idx) return Classification::Continuous;
  double l = f.left_limit(at), r = f.right_limit(at);
  const auto& v = f.point_values()[*idx];
  if (nearly_equal(l, r)) {
    if (!v || nearly_equal(*v, l)) return Classification::Continuous;
    return Classification::CompletelyDiscontinuous;
  }
  if (!v) return Classification::CompletelyDiscontinuous;
  if (nearly_equal(*v, l)) return Classification::LeftSC;
  if (nearly_equal(*v, r)) return Classification::RightSC;
  return Classification::CompletelyDiscontinuous;
}

/// Breakpoint classification compatible with o: continuous, or
/// semicontinuous from o's side.
inline bool is_semicontinuous_at(const PiecewiseFn& f, double at, Orientation o) {
  Classification c = classify(f, at);
  if (c == Classification::Continuous) return true;
  if (o == Orientation::Left) return c == Classification::LeftSC;
  if (o == Orientation::Right) return c == Classification::RightSC;
  return false;
}

inline bool is_semicontinuous(const PiecewiseFn& f, Orientation o) {
  return std::all_of(f.breakpoints().begin(), f.breakpoints().end(),
                     [&](double b) { return is_semicontinuous_at(f, b, o); });
}

/// Replaces every breakpoint value by the limit from o's continuity side.
inline PiecewiseFn extend(const PiecewiseFn& f, Orientation o) {
  require_one_sided(o, "extend");
  std::vector<std::optional<double>> v;
  for (double b : f.breakpoints()) v.push_back(o == Orientation::Left ? f.left_limit(b) : f.right_limit(b));
  return PiecewiseFn(f.breakpoints(), f.pieces(), std::move(v), o);
}

/// Resets values at removable discontinuities (equal one-sided limits) to
/// the common limit.
inline PiecewiseFn heal_removable(const PiecewiseFn& f) {
  std::vector<std::optional<double>> v = f.point_values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double b = f.breakpoints()[i], l = f.left_limit(b), r = f.right_limit(b);
    if (nearly_equal(l, r)) v[i] = l;
  }
  return f.with_values(std::move(v));
}

struct JumpRecord {
  double point;
  double left;
  double right;
  std::optional<double> value;
  double jump() const { return right - left; }
};

/// Breakpoints where the one-sided limits differ.
inline std::vector<JumpRecord> jump_content(const PiecewiseFn& f) {
  std::vector<JumpRecord> out;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    double b = f.breakpoints()[i], l = f.left_limit(b), r = f.right_limit(b);
    if (!nearly_equal(l, r)) out.push_back({b, l, r, f.point_values()[i]});
  }
  return out;
}

struct ProbeReport {
  bool ok = true;
  double max_deviation = 0.0;
};

/// Samples each piece at 8 geometrically shrinking offsets on both sides of
/// every breakpoint and checks convergence to the stored one-sided limits.
inline ProbeReport continuity_probe(const PiecewiseFn& f, double tol = 1e-9) {
  ProbeReport rep;
  for (double b : f.breakpoints()) {
    double scale = std::max(1.0, std::abs(b));
    const SmoothFn& lp = f.pieces()[f.piece_left_of(b)];
    const SmoothFn& rp = f.pieces()[f.piece_right_of(b)];
    double slope = std::max(std::abs(lp.derivative()(b)), std::abs(rp.derivative()(b)));
    double prev_l = kInf, prev_r = kInf;
    for (int k = 0; k < 8; ++k) {
      double h = 1e-6 * scale * std::pow(0.25, k);
      double dl = std::abs(lp(b - h) - f.left_limit(b)), dr = std::abs(rp(b + h) - f.right_limit(b));
      rep.max_deviation = std::max({rep.max_deviation, dl, dr});
      if (dl > prev_l + tol || dr > prev_r + tol) rep.ok = false;
      prev_l = dl;
      prev_r = dr;
      if (k == 7 && (dl > tol * (1.0 + slope) || dr > tol * (1.0 + slope))) rep.ok = false;
    }
  }
  return rep;
}

/// Equality of representatives: same values on a probe grid (piece
/// midpoints, breakpoints' neighbourhoods and the given extra points) and the
/// same jump content.
inline bool equivalent(const PiecewiseFn& f, const PiecewiseFn& g, const std::vector<double>& extra = {}, double tol = 1e-12) {
  std::vector<double> b = f.breakpoints();
  b.insert(b.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<double> probes = extra;
  if (b.empty()) probes.insert(probes.end(), {-2.5, -1.0, 0.0, 0.7, 3.0});
  for (std::size_t i = 0; i < b.size(); ++i) {
    probes.push_back(b[i]);
    probes.push_back(i == 0 ? b[i] - 1.0 : 0.5 * (b[i - 1] + b[i]));
  }
  if (!b.empty()) probes.push_back(b.back() + 1.0);
  for (double x : probes) {
    auto fv = f.value_at(x), gv = g.value_at(x);
    if (fv.has_value() != gv.has_value()) return false;
    if (fv && std::abs(*fv - *gv) > tol) return false;
  }
  auto jf = jump_content(f), jg = jump_content(g);
  if (jf.size() != jg.size()) return false;
  for (std::size_t i = 0; i < jf.size(); ++i)
    if (jf[i].point != jg[i].point || std::abs(jf[i].jump() - jg[i].jump()) > tol) return false;
  return true;
}

}  // namespace semiflux
