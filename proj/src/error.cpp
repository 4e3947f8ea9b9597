#include "mlwalk/error.hpp"

namespace mlwalk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::LayerSizeMismatch: return "LayerSizeMismatch";
    case ErrorCode::SelfPairing: return "SelfPairing";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NonUnitaryCoin: return "NonUnitaryCoin";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonNormalizedInput: return "NonNormalizedInput";
    case ErrorCode::NonStochastic: return "NonStochastic";
    case ErrorCode::MembershipMismatch: return "MembershipMismatch";
    case ErrorCode::UndefinedEstimate: return "UndefinedEstimate";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mlwalk
