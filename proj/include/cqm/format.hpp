#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace cqm {

/// Shortest decimal string that reads back to exactly `v`; "inf", "-inf", "nan"
/// for non-finite values.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Fixed number of significant digits, for human-facing reports.
inline std::string format_sig(double v, int digits = 6) {
  if (!std::isfinite(v)) return format_number(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace cqm
