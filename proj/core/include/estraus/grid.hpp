#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "estraus/arith.hpp"

namespace estraus {

/// Parses a decimal integer, optionally written as a power "B^E" (10^6).
u64 parse_integer(std::string_view text);

/// Grid specification: "log:LO..HI" for 10^LO, ..., 10^HI, or a
/// comma-separated list of integers. The result is strictly increasing and
/// every value is >= 2.
std::vector<u64> parse_grid(std::string_view text);

/// "LO..HI" with both ends inclusive.
std::pair<u64, u64> parse_range(std::string_view text);

}  // namespace estraus
