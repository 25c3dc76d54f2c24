#ifndef STYLO_NUMERIC_TEXT_H_
#define STYLO_NUMERIC_TEXT_H_

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "stylo/error.h"

namespace stylo {

// 17 significant digits: enough for an exact double round trip.
inline std::string FormatDouble(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double ParseDouble(std::string_view text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int ParseInteger(std::string_view text) {
  Int value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> SplitOn(std::string_view text,
                                             char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace stylo

#endif  // STYLO_NUMERIC_TEXT_H_
