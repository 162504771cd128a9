#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace semiflux {

/// Dense real polynomial, coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

  double operator()(double x) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Polynomial derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * double(k));
    return Polynomial(std::move(d));
  }

  /// P(-x)
  Polynomial reflected() const {
    std::vector<double> r = c_;
    for (std::size_t k = 1; k < r.size(); k += 2) r[k] = -r[k];
    return Polynomial(std::move(r));
  }

  /// P(x - s)
  Polynomial shifted(double s) const {
    Polynomial r;
    const Polynomial lin({-s, 1.0});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Polynomial::constant(*it);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> r = a.c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Every real root lies in [-B, B].
  double cauchy_bound() const {
    if (degree() < 1) return 0.0;
    double lead = std::abs(c_.back()), m = 0.0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) m = std::max(m, std::abs(c_[k]) / lead);
    return 1.0 + m;
  }

  /// Real roots in [a, b] (finite), ascending. Isolated through the roots of
  /// the derivative, then refined by bisection.
  std::vector<double> roots_in(double a, double b) const {
    std::vector<double> out;
    if (a > b || degree() < 1) return out;
    if (degree() == 1) {
      double r = -c_[0] / c_[1];
      if (r >= a && r <= b) out.push_back(r);
      return out;
    }
    std::vector<double> knots{a};
    for (double r : derivative().roots_in(a, b))
      if (r > knots.back()) knots.push_back(r);
    if (b > knots.back()) knots.push_back(b);
    const Polynomial& p = *this;
    auto push = [&](double r) {
      if (out.empty() || r > out.back()) out.push_back(r);
    };
    for (std::size_t i = 0; i < knots.size(); ++i) {
      double u = knots[i], fu = p(u);
      if (fu == 0.0) push(u);
      if (i + 1 == knots.size()) break;
      double v = knots[i + 1], fv = p(v);
      if (fu == 0.0 || fv == 0.0 || std::signbit(fu) == std::signbit(fv)) continue;
      for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (u + v);
        if (m <= u || m >= v) break;
        double fm = p(m);
        if (fm == 0.0) {
          u = v = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(fu)) {
          u = m;
          fu = fm;
        } else {
          v = m;
        }
      }
      push(0.5 * (u + v));
    }
    if (p(b) == 0.0) push(b);
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

/// Quadratic exponent q(x) = c0 + c1 x + c2 x^2.
struct Exponent {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
  bool is_zero() const { return c0 == 0.0 && c1 == 0.0 && c2 == 0.0; }
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Sum of terms P(x) exp(q(x)) with polynomial P and quadratic q. The class is
/// closed under differentiation, products, reflection and shifts, so every
/// derivative is analytic.
class SmoothFn {
 public:
  struct Term {
    Polynomial poly;
    Exponent exponent;
  };

  SmoothFn() = default;
  explicit SmoothFn(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

  static SmoothFn constant(double c) { return SmoothFn({Term{Polynomial::constant(c), {}}}); }
  static SmoothFn polynomial(std::vector<double> coeffs) { return SmoothFn({Term{Polynomial(std::move(coeffs)), {}}}); }
  static SmoothFn identity() { return polynomial({0.0, 1.0}); }
  /// amplitude * exp(-((x - center)/scale)^2)
  static SmoothFn gaussian(double center = 0.0, double scale = 1.0, double amplitude = 1.0) {
    if (!(scale > 0.0)) throw std::invalid_argument("gaussian: scale must be positive");
    double k = 1.0 / (scale * scale);
    return SmoothFn({Term{Polynomial::constant(amplitude), {-k * center * center, 2.0 * k * center, -k}}});
  }
  static SmoothFn exponential(double rate, double amplitude = 1.0) {
    return SmoothFn({Term{Polynomial::constant(amplitude), {0.0, rate, 0.0}}});
  }
  /// H_k(x) exp(-x^2) with the physicists' Hermite polynomial H_k.
  static SmoothFn hermite_gaussian(unsigned k) {
    Polynomial h0({1.0}), h1({0.0, 2.0});
    if (k == 0) return SmoothFn({Term{h0, {0.0, 0.0, -1.0}}});
    for (unsigned n = 1; n < k; ++n) {
      Polynomial h2 = Polynomial({0.0, 2.0}) * h1 + (-2.0 * double(n)) * h0;
      h0 = h1;
      h1 = h2;
    }
    return SmoothFn({Term{h1, {0.0, 0.0, -1.0}}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
  }
  /// True when every term carries Gaussian decay, so f and all its
  /// derivatives vanish faster than any power at both infinities.
  bool decays() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exponent.c2 < 0.0; });
  }

  double operator()(double x) const {
    double s = 0.0;
    for (const auto& t : terms_) {
      double e = t.exponent(x);
      if (e < -745.0) continue;
      s += t.poly(x) * std::exp(e);
    }
    return s;
  }

  SmoothFn derivative() const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      Polynomial dq({t.exponent.c1, 2.0 * t.exponent.c2});
      out.push_back({t.poly.derivative() + t.poly * dq, t.exponent});
    }
    return SmoothFn(std::move(out));
  }
  SmoothFn derivative(unsigned order) const {
    SmoothFn r = *this;
    for (unsigned k = 0; k < order; ++k) r = r.derivative();
    return r;
  }

  /// f(-x)
  SmoothFn reflected() const {
    std::vector<Term> out;
    for (const auto& t : terms_) out.push_back({t.poly.reflected(), {t.exponent.c0, -t.exponent.c1, t.exponent.c2}});
    return SmoothFn(std::move(out));
  }
  /// f(x - s)
  SmoothFn shifted(double s) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      const auto& q = t.exponent;
      out.push_back({t.poly.shifted(s), {q.c0 - q.c1 * s + q.c2 * s * s, q.c1 - 2.0 * q.c2 * s, q.c2}});
    }
    return SmoothFn(std::move(out));
  }

  friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return SmoothFn(std::move(t));
  }
  friend SmoothFn operator*(double s, const SmoothFn& a) {
    std::vector<Term> t = a.terms_;
    for (auto& x : t) x.poly = s * x.poly;
    return SmoothFn(std::move(t));
  }
  friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) { return a + (-1.0) * b; }
  friend SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) {
    std::vector<Term> t;
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_)
        t.push_back({x.poly * y.poly,
                     {x.exponent.c0 + y.exponent.c0, x.exponent.c1 + y.exponent.c1, x.exponent.c2 + y.exponent.c2}});
    return SmoothFn(std::move(t));
  }
  friend bool operator==(const SmoothFn& a, const SmoothFn& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].poly == b.terms_[i].poly) || a.terms_[i].exponent != b.terms_[i].exponent) return false;
    return true;
  }

  /// Limit of |f| at +inf (direction > 0) or -inf.
  double abs_limit(int direction) const {
    double lim = 0.0;
    for (const auto& t : terms_) {
      const auto& q = t.exponent;
      double growth = q.c2 != 0.0 ? q.c2 : (direction > 0 ? q.c1 : -q.c1);
      if (growth < 0.0) continue;
      if (growth > 0.0 || t.poly.degree() >= 1) return kInfinity;
      lim += t.poly.coeff(0) * std::exp(q.c0);
    }
    return std::abs(lim);
  }

  /// Stationary points of f in [a, b]. Infinite ends are clipped to a radius
  /// beyond which no stationary point can occur (or every term is below
  /// underflow). Single-term functions are solved exactly through the
  /// polynomial P' + P q'; sums of terms fall back to a sign scan.
  std::vector<double> critical_points(double a, double b) const {
    std::vector<double> out;
    if (terms_.empty() || a >= b) return out;
    if (terms_.size() == 1) {
      const auto& t = terms_[0];
      Polynomial r = t.poly.derivative() + t.poly * Polynomial({t.exponent.c1, 2.0 * t.exponent.c2});
      double bound = r.cauchy_bound();
      return r.roots_in(std::max(a, -bound), std::min(b, bound));
    }
    double radius = 0.0;
    for (const auto& t : terms_) {
      const auto& q = t.exponent;
      Polynomial r = t.poly.derivative() + t.poly * Polynomial({q.c1, 2.0 * q.c2});
      radius = std::max(radius, r.cauchy_bound());
      if (q.c2 < 0.0) radius = std::max(radius, std::abs(q.c1 / (2.0 * q.c2)) + std::sqrt((745.0 + std::abs(q.c0)) / -q.c2));
    }
    double lo = std::max(a, -radius), hi = std::min(b, radius);
    if (!(lo < hi)) return out;
    SmoothFn d = derivative();
    constexpr int kCells = 4096;
    constexpr int kMaxRoots = 512;
    double prev_x = lo, prev = d(lo);
    for (int i = 1; i <= kCells; ++i) {
      double x = lo + (hi - lo) * double(i) / kCells;
      double v = d(x);
      if (prev == 0.0) {
        out.push_back(prev_x);
      } else if (v != 0.0 && std::signbit(v) != std::signbit(prev)) {
        double u = prev_x, w = x, fu = prev;
        for (int it = 0; it < 200; ++it) {
          double m = 0.5 * (u + w);
          if (m <= u || m >= w) break;
          double fm = d(m);
          if (fm == 0.0) {
            u = w = m;
            break;
          }
          if (std::signbit(fm) == std::signbit(fu)) {
            u = m;
            fu = fm;
          } else {
            w = m;
          }
        }
        out.push_back(0.5 * (u + w));
      }
      if (out.size() > kMaxRoots)
        throw std::domain_error("piece is not piecewise monotone at the supported resolution");
      prev_x = x;
      prev = v;
    }
    if (prev == 0.0) out.push_back(hi);
    return out;
  }

 private:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exponent == t.exponent)
        out.back().poly = out.back().poly + t.poly;
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.poly.is_zero(); }), out.end());
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

}  // namespace semiflux
