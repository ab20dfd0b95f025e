#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace simplex {

/// 17 significant digits, shortest form ("%.17g"); parses back to the same
/// double.
inline void append_real(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 17);
  out.append(buf, r.ptr);
}

[[nodiscard]] inline std::string format_real(double v) {
  std::string s;
  append_real(s, v);
  return s;
}

}  // namespace simplex
