#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace rgamss {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

// Strict parse of a whole string; returns false on trailing garbage.
inline bool parse_double(const std::string& text, double& out) {
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace rgamss
