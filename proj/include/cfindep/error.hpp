#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfindep {

enum class ErrorCode {
  DivisorContainsZero,
  NegativeSqrt,
  NoSignChange,
  NonConvergent,
  NotSquarefree,
  Reducible,
  NotMonic,
  RootNotIsolated,
  DivisionByZero,
  FieldMismatch,
  PrecisionInsufficient,
  ZeroTailDivision,
  QuotientBelowOne,
  TailContainsZero,
  IndeterminateAtPrecision,
  HypothesisViolated,
  RankDeficient,
  PrecisionTooLow,
  Overflow,
  UnknownFamily,
  RootsNotRealDistinctGreaterOne,
  DegreeTooLarge,
  InvalidArgument,
  ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisorContainsZero: return "DivisorContainsZero";
    case ErrorCode::NegativeSqrt: return "NegativeSqrt";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::RootNotIsolated: return "RootNotIsolated";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::ZeroTailDivision: return "ZeroTailDivision";
    case ErrorCode::QuotientBelowOne: return "QuotientBelowOne";
    case ErrorCode::TailContainsZero: return "TailContainsZero";
    case ErrorCode::IndeterminateAtPrecision: return "IndeterminateAtPrecision";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::RootsNotRealDistinctGreaterOne: return "RootsNotRealDistinctGreaterOne";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; `code()`
/// identifies the condition so callers can map it (the CLI maps it to exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cfindep
