#pragma once

#include <charconv>
#include <string>

namespace imddic::detail {

// Locale-independent, 9 significant digits.
inline void append_sig9(std::string& out, double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  out.append(buf, res.ptr);
}

inline double round_sig9(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  double r = v;
  std::from_chars(buf, res.ptr, r);
  return r;
}

}  // namespace imddic::detail
