#ifndef TWISTLAB_ERROR_HPP
#define TWISTLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace twistlab {

enum class ErrorCode {
  invalid_argument,         // dimension/field mismatch, bad construction data
  parse_error,              // malformed definition file or scalar string
  not_invertible,           // singular map; message carries the rank witness
  inconsistent_system,      // linear solve has no solution
  not_convolution_invertible,
  uncertified,              // downstream op given data without a passing certificate
  check_failed,             // a required certification suite failed
  internal_consistency,     // a conclusion failed after its hypotheses passed
  limit_exceeded,           // size guard refused an exhaustive check
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace twistlab

#endif
