#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "simplex/format.hpp"

namespace simplex::text {

/// Malformed numeric text; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t token, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + " token " +
                           std::to_string(token) + ": " + what),
        line_(line),
        token_(token) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::size_t token_;
};

[[nodiscard]] inline bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\f\v");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\f\v");
  return s.substr(b, e - b + 1);
}

inline double parse_token(std::string_view tok, std::size_t line, std::size_t index) {
  if (tok.empty()) throw ParseError(line, index, "empty field");
  // from_chars rejects a leading '+', which is common in hand-written files.
  std::string_view digits = tok;
  if (digits.size() > 1 && digits.front() == '+' && digits[1] != '-') {
    digits.remove_prefix(1);
  }
  double v = 0.0;
  const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (r.ec == std::errc::result_out_of_range) {
    throw ParseError(line, index, "value out of range '" + std::string(tok) + "'");
  }
  if (r.ec != std::errc{} || r.ptr != digits.data() + digits.size()) {
    throw ParseError(line, index, "not a number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, index, "non-finite value '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

/// One vector per line. A line containing a comma is split on commas (each
/// field trimmed, empty fields rejected); otherwise on whitespace.
[[nodiscard]] inline std::vector<double> parse_vector(std::string_view line,
                                                      std::size_t line_no) {
  std::vector<double> out;
  std::size_t index = 0;
  if (line.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      const auto field = detail::trim(line.substr(pos, comma - pos));
      out.push_back(detail::parse_token(field, line_no, ++index));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }
  std::size_t pos = 0;
  constexpr std::string_view ws = " \t\r\f\v";
  while ((pos = line.find_first_not_of(ws, pos)) != std::string_view::npos) {
    const auto end = line.find_first_of(ws, pos);
    out.push_back(detail::parse_token(line.substr(pos, end - pos), line_no, ++index));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

/// Comma-joined, 17 significant digits per component.
[[nodiscard]] inline std::string format_vector(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    append_real(s, v[i]);
  }
  return s;
}

}  // namespace simplex::text
