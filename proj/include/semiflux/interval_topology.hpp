#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiflux/ext_real.hpp"
#include "semiflux/orientation.hpp"

namespace semiflux {

struct Interval {
  ExtReal lo;
  ExtReal hi;
  bool lo_inc = false;
  bool hi_inc = false;

  Interval() = default;
  Interval(ExtReal l, ExtReal h, bool li, bool hi_included)
      : lo(l), hi(h), lo_inc(li), hi_inc(hi_included) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    if (lo == hi && lo_inc && hi_inc && !lo.is_finite())
      throw std::invalid_argument("Interval: an atom at the glue point +-inf is not allowed");
  }

  static Interval closed(ExtReal a, ExtReal b) { return {a, b, true, true}; }
  static Interval open(ExtReal a, ExtReal b) { return {a, b, false, false}; }
  static Interval left_open(ExtReal a, ExtReal b) { return {a, b, false, true}; }   // (a,b]
  static Interval right_open(ExtReal a, ExtReal b) { return {a, b, true, false}; }  // [a,b)
  static Interval point(ExtReal a) { return {a, a, true, true}; }
  static Interval real_line() { return {ExtReal::neg_inf(), ExtReal::pos_inf(), false, false}; }

  bool is_empty() const { return lo == hi && !(lo_inc && hi_inc); }
  bool is_point() const { return lo == hi && lo_inc && hi_inc; }
  bool is_bounded() const { return lo.is_finite() && hi.is_finite(); }
  double length() const { return is_empty() ? 0.0 : double(hi) - double(lo); }

  bool contains(ExtReal x) const {
    if (is_empty()) return false;
    bool above = x > lo || (x == lo && lo_inc);
    bool below = x < hi || (x == hi && hi_inc);
    return above && below;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_inc == b.lo_inc && a.hi_inc == b.hi_inc;
  }
};

inline std::string format_bound(ExtReal x) {
  if (!x.is_finite()) return x < 0.0 ? "-inf" : "+inf";
  std::ostringstream os;
  os.precision(17);
  os << double(x);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << (iv.lo_inc ? '[' : '(') << format_bound(iv.lo) << ',' << format_bound(iv.hi)
            << (iv.hi_inc ? ']' : ')');
}

/// Disjoint, sorted union of intervals kept in canonical form: touching
/// pieces merge whenever the union has no hole at the shared endpoint.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> pieces) : IntervalSet(std::vector<Interval>(pieces)) {}
  explicit IntervalSet(std::vector<Interval> pieces) : pieces_(std::move(pieces)) { normalize(); }

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  bool is_bounded() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Interval& i) { return i.is_bounded(); });
  }
  double lebesgue_measure() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.length();
    return m;
  }

  bool contains(ExtReal x) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& i) { return i.contains(x); });
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) { return a.pieces_ == b.pieces_; }

 private:
  void normalize() {
    std::vector<Interval> in;
    for (const auto& p : pieces_)
      if (!p.is_empty()) in.push_back(p);
    std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.lo_inc && !b.lo_inc;
    });
    std::vector<Interval> out;
    for (const auto& p : in) {
      if (out.empty()) {
        out.push_back(p);
        continue;
      }
      Interval& cur = out.back();
      bool touches = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_inc || p.lo_inc));
      if (!touches) {
        out.push_back(p);
        continue;
      }
      if (p.lo == cur.lo) cur.lo_inc = cur.lo_inc || p.lo_inc;
      if (p.hi > cur.hi) {
        cur.hi = p.hi;
        cur.hi_inc = p.hi_inc;
      } else if (p.hi == cur.hi) {
        cur.hi_inc = cur.hi_inc || p.hi_inc;
      }
    }
    pieces_ = std::move(out);
  }

  std::vector<Interval> pieces_;
};

inline std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
  if (s.empty()) return os << "{}";
  for (std::size_t i = 0; i < s.pieces().size(); ++i) os << (i ? " u " : "") << s.pieces()[i];
  return os;
}

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.pieces();
  all.insert(all.end(), b.pieces().begin(), b.pieces().end());
  return IntervalSet(std::move(all));
}

inline bool contains(const IntervalSet& s, ExtReal x) { return s.contains(x); }

inline IntervalSet intersection(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  for (const auto& p : a.pieces())
    for (const auto& q : b.pieces()) {
      Interval r;
      if (p.lo > q.lo) {
        r.lo = p.lo, r.lo_inc = p.lo_inc;
      } else if (q.lo > p.lo) {
        r.lo = q.lo, r.lo_inc = q.lo_inc;
      } else {
        r.lo = p.lo, r.lo_inc = p.lo_inc && q.lo_inc;
      }
      if (p.hi < q.hi) {
        r.hi = p.hi, r.hi_inc = p.hi_inc;
      } else if (q.hi < p.hi) {
        r.hi = q.hi, r.hi_inc = q.hi_inc;
      } else {
        r.hi = p.hi, r.hi_inc = p.hi_inc && q.hi_inc;
      }
      if (r.lo < r.hi || (r.lo == r.hi && r.lo_inc && r.hi_inc)) out.push_back(r);
    }
  return IntervalSet(std::move(out));
}

/// Complement inside the extended line [-inf, +inf].
inline IntervalSet complement(const IntervalSet& s) {
  std::vector<Interval> out;
  ExtReal lo = ExtReal::neg_inf();
  bool lo_inc = true;
  for (const auto& p : s.pieces()) {
    Interval gap;
    gap.lo = lo, gap.lo_inc = lo_inc, gap.hi = p.lo, gap.hi_inc = !p.lo_inc;
    if (gap.lo < gap.hi || (gap.lo == gap.hi && gap.lo_inc && gap.hi_inc)) out.push_back(gap);
    lo = p.hi;
    lo_inc = !p.hi_inc;
  }
  Interval tail;
  tail.lo = lo, tail.lo_inc = lo_inc, tail.hi = ExtReal::pos_inf(), tail.hi_inc = true;
  if (tail.lo < tail.hi || (tail.lo == tail.hi && tail.lo_inc)) out.push_back(tail);
  return IntervalSet(std::move(out));
}

/// Turns every non-degenerate piece into the orientation's generating form,
/// (lo,hi] for Left and [lo,hi) for Right, by adding or removing endpoints.
/// Degenerate points are kept as atoms.
inline IntervalSet orient_closure(const IntervalSet& s, Orientation o) {
  require_one_sided(o, "orient_closure");
  std::vector<Interval> out;
  for (auto p : s.pieces()) {
    if (!p.is_point()) {
      p.lo_inc = (o == Orientation::Right);
      p.hi_inc = (o == Orientation::Left);
    }
    out.push_back(p);
  }
  return IntervalSet(std::move(out));
}

/// Finite endpoints at which membership in a and b differs.
inline std::vector<double> membership_differences(const IntervalSet& a, const IntervalSet& b) {
  std::vector<double> ends;
  for (const auto* s : {&a, &b})
    for (const auto& p : s->pieces())
      for (ExtReal e : {p.lo, p.hi})
        if (e.is_finite()) ends.push_back(e);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<double> out;
  for (double e : ends)
    if (a.contains(e) != b.contains(e)) out.push_back(e);
  return out;
}

}  // namespace semiflux
