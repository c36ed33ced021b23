#pragma once

#include <stdexcept>
#include <string>

namespace cqg {

enum class ErrorCode {
  ParseError,
  PoleAtPoint,
  DimensionMismatch,
  SingularMatrix,
  IndexOutOfRange,
  ShapeMismatch,
  UnknownGenerator,
  NotKacTagged,
  SpanTooLarge,
  InconsistentElimination,
  InconsistentSubstitution,
  UnsupportedSize,
  UnsupportedSpec,
  BlockMismatch,
  UnknownName,
  CounitCheckFailed,
  BasisMismatch,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

} // namespace cqg
