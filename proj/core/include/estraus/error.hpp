#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace estraus {

enum class ErrorKind {
  Domain,
  Overflow,
  Syntax,
  UnknownIdentifier,
  UnknownName,
  NonFinite,
  DivisionByZero,
  Magnitude,
  Io,
  CorruptCheckpoint,
  Invariant,
  Interrupted,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure in the library surfaces as an Error tagged with its kind;
// callers (the CLI in particular) map kinds onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Syntax,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace estraus
