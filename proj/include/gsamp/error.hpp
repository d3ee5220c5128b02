#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsamp {

enum class ErrorCode {
  InvalidGraph,
  InvalidParameter,
  DimensionMismatch,
  IndexOutOfRange,
  IsolatedVertex,
  SingularInteriorBlock,
  ConnectivityFailure,
  EigensolveFailure,
  IntervalMismatch,
  DsConditionViolated,
  SingularCorrelation,
  ZeroReference,
  NotBipartite,
  UnequalParts,
  PairingFailure,
  IoFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// True for failures caused by the numbers rather than by the inputs' shape or
// the configuration (the CLI maps these to a distinct exit code).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace gsamp
