#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semiflux {

/// Left pairs with generating sets (a,b], Right with [a,b), Standard with
/// the ordinary Borel sets and Lebesgue measure.
enum class Orientation { Left, Right, Standard };

constexpr Orientation mirror(Orientation o) {
  switch (o) {
    case Orientation::Left: return Orientation::Right;
    case Orientation::Right: return Orientation::Left;
    default: return Orientation::Standard;
  }
}

inline std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Left: return "left";
    case Orientation::Right: return "right";
    default: return "standard";
  }
}

inline Orientation parse_orientation(std::string_view s) {
  if (s == "left" || s == "Left" || s == "L") return Orientation::Left;
  if (s == "right" || s == "Right" || s == "R") return Orientation::Right;
  if (s == "standard" || s == "Standard" || s == "S") return Orientation::Standard;
  throw std::invalid_argument("unknown orientation '" + std::string(s) + "'");
}

inline void require_one_sided(Orientation o, const char* what) {
  if (o == Orientation::Standard)
    throw std::invalid_argument(std::string(what) + ": orientation must be left or right");
}

}  // namespace semiflux
