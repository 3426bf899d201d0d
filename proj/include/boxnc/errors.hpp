#ifndef BOXNC_ERRORS_HPP
#define BOXNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace boxnc {

enum class ErrorCode {
  invalid_argument,  // bad parameters, schema violations, precondition failures
  domain_error,      // point outside a declared domain
  parse_error,       // expression or JSON text could not be parsed
  evaluation_error,  // runtime evaluation failure (division by zero, off-grid probe)
  internal_error
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::evaluation_error: return "evaluation_error";
    case ErrorCode::internal_error: return "internal_error";
  }
  return "unknown";
}

}  // namespace boxnc

#endif
