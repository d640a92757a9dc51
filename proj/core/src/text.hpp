#pragma once

// Helpers for the brace-list text encodings shared by all modules.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sumsetlab::detail {

/// Parses "{a,b,c}" (possibly "{}") into integers. Whitespace is not allowed.
std::vector<std::int64_t> parse_brace_list(std::string_view text, std::string_view what);

/// Parses a decimal integer that must consume the whole view.
std::int64_t parse_integer(std::string_view text, std::string_view what);

template <typename Range>
std::string format_brace_list(const Range& values) {
  std::string out = "{";
  bool first = true;
  for (const auto v : values) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace sumsetlab::detail
