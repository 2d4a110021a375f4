#include "infolab/error.hpp"

namespace infolab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyHistogram: return "empty histogram";
    case ErrorKind::SupportMismatch: return "support mismatch";
    case ErrorKind::DuplicateLabel: return "duplicate label";
    case ErrorKind::InvalidValue: return "invalid value";
    case ErrorKind::ParseError: return "parse error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace infolab
