#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stc {

enum class ErrorCode {
  NotPrime,
  LimitExceeded,
  DivisionByZero,
  WrongField,
  ZeroPolynomial,
  InvalidInput,
  Singular,
  ParseError,
  IncompatibleFamily,
  NotIsotropic,
  ZeroVector,
  NotInGroup,
  EmbeddingNotInGroup,
  CacheCorrupt,
  VersionMismatch,
  UnknownLabel,
  NotInBTn,
  NonIntegral,
  InternalNonIntegral,
  StarAsymmetric,
  BadParity,
  DuplicateAbscissa,
};

std::string_view error_code_name(ErrorCode c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::ParseError, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace stc
