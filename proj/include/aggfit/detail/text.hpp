#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace aggfit::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

/// Strict full-token parse; rejects trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

/// Shortest representation that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Numeric-aware ordering: numeric tokens sort by value (before any
/// non-numeric token), otherwise bytewise.
inline bool label_less(std::string_view a, std::string_view b) {
  const auto na = parse_double(a);
  const auto nb = parse_double(b);
  if (na && nb) {
    if (*na != *nb) return *na < *nb;
    return a < b;
  }
  if (na != std::nullopt || nb != std::nullopt) return na != std::nullopt;
  return a < b;
}

}  // namespace aggfit::detail
