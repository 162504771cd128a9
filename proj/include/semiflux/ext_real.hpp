#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace semiflux {

/// A point of the extended real line. NaN is rejected so the order is total;
/// comparisons go through the implicit conversion to double.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT(implicit)
    if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN is not a point of the extended line");
  }

  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }
  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return v_; }
  constexpr operator double() const { return v_; }  // NOLINT(implicit)
  bool is_finite() const { return std::isfinite(v_); }

 private:
  double v_ = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace semiflux
