#include "estraus/error.hpp"

namespace estraus {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Magnitude: return "magnitude";
    case ErrorKind::Io: return "io";
    case ErrorKind::CorruptCheckpoint: return "corrupt-checkpoint";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Interrupted: return "interrupted";
  }
  return "unknown";
}

}  // namespace estraus
