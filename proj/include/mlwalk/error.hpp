#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlwalk {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  VertexOutOfRange,
  LayerSizeMismatch,
  SelfPairing,
  InvalidParameter,
  IsolatedVertex,
  NonUnitaryCoin,
  NotAdjacent,
  DegreeTooSmall,
  DimensionMismatch,
  NonNormalizedInput,
  NonStochastic,
  MembershipMismatch,
  UndefinedEstimate,
  SeriesTooShort,
  ParseError,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported with this exception; code() identifies
// the failure class so callers and tests can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mlwalk
