#pragma once

#include <stdexcept>
#include <string>

namespace scim {

// Broad failure classes. The C API and the HTTP service map these onto
// status codes, so keep the list short.
enum class ErrorCode {
  invalid_argument,  // malformed request or flag
  not_found,         // unknown entity, discipline, journal, metric
  unprocessable,     // well-formed input the computation cannot use
  parse,             // malformed input file
  io,                // missing or unreadable file
  unavailable,       // no corpus loaded
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace scim
