#ifndef LEPAGE_FORMAT_HPP
#define LEPAGE_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace lepage {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Appends format_double(v) to `out` without a temporary.
inline void append_double(std::string &out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double &out) {
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

} // namespace lepage

#endif // LEPAGE_FORMAT_HPP
