#include "gsamp/error.hpp"

namespace gsamp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::SingularInteriorBlock: return "SingularInteriorBlock";
    case ErrorCode::ConnectivityFailure: return "ConnectivityFailure";
    case ErrorCode::EigensolveFailure: return "EigensolveFailure";
    case ErrorCode::IntervalMismatch: return "IntervalMismatch";
    case ErrorCode::DsConditionViolated: return "DsConditionViolated";
    case ErrorCode::SingularCorrelation: return "SingularCorrelation";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::UnequalParts: return "UnequalParts";
    case ErrorCode::PairingFailure: return "PairingFailure";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularInteriorBlock:
    case ErrorCode::ConnectivityFailure:
    case ErrorCode::EigensolveFailure:
    case ErrorCode::DsConditionViolated:
    case ErrorCode::SingularCorrelation:
    case ErrorCode::ZeroReference:
    case ErrorCode::PairingFailure:
    case ErrorCode::IsolatedVertex:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gsamp
