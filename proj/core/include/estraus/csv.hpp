#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace estraus::csv {

/// Reals are written with 12 significant digits; NaN as "NA".
std::string format_real(double value);

/// Writes one LF-terminated row. Fields are emitted verbatim.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

std::vector<std::string> split_row(std::string_view line);

}  // namespace estraus::csv
