#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgps {

enum class ErrorCode {
  MixedRings,
  BadModulus,
  BadField,
  OutOfCarrier,
  ContextMismatch,
  ZeroSeries,
  ZeroPoly,
  NonUnitLeadingCoefficient,
  NonZeroLeadingExponent,
  UnsupportedMonoid,
  NotEndomorphism,
  NotWellDefined,
  EscapesTruncation,
  NonTerminating,
  NonConfluent,
  NotInvertibleTwist,
  PreimageSearchExhausted,
  NotRigid,
  NotEnumerable,
  NotComputable,
  RecursionViolated,
  UnknownScenario,
  ParameterRange,
  InvalidArgument,
  SyntaxError,
  UnknownIdentifier,
  TypeMismatch,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedRings: return "MixedRings";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::BadField: return "BadField";
    case ErrorCode::OutOfCarrier: return "OutOfCarrier";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ZeroSeries: return "ZeroSeries";
    case ErrorCode::ZeroPoly: return "ZeroPoly";
    case ErrorCode::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorCode::NonZeroLeadingExponent: return "NonZeroLeadingExponent";
    case ErrorCode::UnsupportedMonoid: return "UnsupportedMonoid";
    case ErrorCode::NotEndomorphism: return "NotEndomorphism";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::EscapesTruncation: return "EscapesTruncation";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::NonConfluent: return "NonConfluent";
    case ErrorCode::NotInvertibleTwist: return "NotInvertibleTwist";
    case ErrorCode::PreimageSearchExhausted: return "PreimageSearchExhausted";
    case ErrorCode::NotRigid: return "NotRigid";
    case ErrorCode::NotEnumerable: return "NotEnumerable";
    case ErrorCode::NotComputable: return "NotComputable";
    case ErrorCode::RecursionViolated: return "RecursionViolated";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ParameterRange: return "ParameterRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
  }
  return "Unknown";
}

/// Domain error raised by the algebra kernel. Verdict-style outcomes
/// (Undecidable, Inconclusive, Unknown) are returned as values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Front-end error carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, int line, int column)
      : Error(code, what + " at " + std::to_string(line) + ":" + std::to_string(column)), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sgps
