#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsc {

enum class ErrorCode {
  InvalidArgument,
  NotAZero,
  NonPositiveHessian,
  Overflow,
  ConvergenceFailure,
  BoxTooSmall,
  QuadratureFailure,
  DegenerateDecomposition,
  OverlappingSupports,
  PartitionNotUnity,
  Exhausted,
  AllZero,
  NonPositiveFunction,
  ZeroVector,
  IllConditionedSpan,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace lsc
