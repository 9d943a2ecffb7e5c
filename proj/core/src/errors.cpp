#include "stablecentres/errors.hpp"

namespace stc {

std::string_view error_code_name(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IncompatibleFamily: return "IncompatibleFamily";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::EmbeddingNotInGroup: return "EmbeddingNotInGroup";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NotInBTn: return "NotInBTn";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::InternalNonIntegral: return "InternalNonIntegral";
    case ErrorCode::StarAsymmetric: return "StarAsymmetric";
    case ErrorCode::BadParity: return "BadParity";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
  }
  return "Unknown";
}

}  // namespace stc
