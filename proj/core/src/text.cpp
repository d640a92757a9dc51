#include "text.hpp"

#include <charconv>

#include "sumsetlab/errors.hpp"

namespace sumsetlab::detail {

std::int64_t parse_integer(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::int64_t> parse_brace_list(std::string_view text, std::string_view what) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError(std::string(what) + ": expected '{...}', got '" + std::string(text) + "'");
  }
  std::vector<std::int64_t> values;
  std::string_view body = text.substr(1, text.size() - 2);
  if (body.empty()) return values;
  while (true) {
    const auto comma = body.find(',');
    values.push_back(parse_integer(body.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return values;
}

}  // namespace sumsetlab::detail
