#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace belltime {

// Locale-independent decimal rendering with up to 17 significant digits, so a
// conforming parser reconstructs the exact binary64 value.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace belltime
