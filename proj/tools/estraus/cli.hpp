#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace estraus::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kIoError = 2,
  kInvariantError = 3,
};

/// Runs one command line (args excludes the program name). Normal output
/// goes to `out` unless redirected with --out; each failure is reported as a
/// single "estraus: error[kind]: message" line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace estraus::cli
