#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infolab {

enum class ErrorKind {
  EmptyHistogram,
  SupportMismatch,
  DuplicateLabel,
  InvalidValue,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for every recoverable library failure; the kind
// distinguishes them for callers that care (the CLI only prints what()).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace infolab
