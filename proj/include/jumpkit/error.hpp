#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jumpkit {

enum class ErrorKind {
  ConfigMismatch,
  NonUnitDivisor,
  CongruenceViolation,
  PrecisionExhausted,
  InvalidArgument,
  NotPurelyWild,
  BadDivisor,
  NonIntegralExponent,
  SpecInvariantViolation,
  UniquenessViolated,
  NoPole,
  NotEquivariant,
  DegreeBound,
  ParseError,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorKind::CongruenceViolation: return "CongruenceViolation";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPurelyWild: return "NotPurelyWild";
    case ErrorKind::BadDivisor: return "BadDivisor";
    case ErrorKind::NonIntegralExponent: return "NonIntegralExponent";
    case ErrorKind::SpecInvariantViolation: return "SpecInvariantViolation";
    case ErrorKind::UniquenessViolated: return "UniquenessViolated";
    case ErrorKind::NoPole: return "NoPole";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::DegreeBound: return "DegreeBound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error raised by every jumpkit module. `kind()` names the failure;
/// the CLI prints `error_name(kind())` verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

inline void require(bool condition, ErrorKind kind, const std::string& detail) {
  if (!condition) fail(kind, detail);
}

}  // namespace jumpkit
