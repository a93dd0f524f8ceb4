#include "estraus/grid.hpp"

#include <charconv>
#include <string>

#include "estraus/error.hpp"

namespace estraus {

namespace {

u64 parse_plain(std::string_view text, std::string_view whole) {
  u64 value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    fail(ErrorKind::Domain, "not an integer: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

u64 parse_integer(std::string_view text) {
  text = trim(text);
  const std::size_t caret = text.find('^');
  if (caret == std::string_view::npos) return parse_plain(text, text);
  const u64 base = parse_plain(text.substr(0, caret), text);
  const u64 exponent = parse_plain(text.substr(caret + 1), text);
  u64 value = 1;
  for (u64 i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(value, base, &value)) {
      fail(ErrorKind::Domain, "integer overflows 64 bits: '" + std::string(text) + "'");
    }
  }
  return value;
}

std::pair<u64, u64> parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    fail(ErrorKind::Domain, "range must look like LO..HI, got '" + std::string(text) + "'");
  }
  return {parse_integer(text.substr(0, dots)), parse_integer(text.substr(dots + 2))};
}

std::vector<u64> parse_grid(std::string_view text) {
  std::vector<u64> grid;
  if (text.starts_with("log:")) {
    const auto [lo, hi] = parse_range(text.substr(4));
    if (lo > hi || hi > 19) fail(ErrorKind::Domain, "log grid exponents out of range");
    for (u64 e = lo; e <= hi; ++e) grid.push_back(parse_integer("10^" + std::to_string(e)));
  } else {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      grid.push_back(parse_integer(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) fail(ErrorKind::Domain, "grid values must be >= 2");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      fail(ErrorKind::Domain, "grid must be strictly increasing");
    }
  }
  return grid;
}

}  // namespace estraus
