#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weightred {

enum class ErrorCode {
  NotPrime,
  TooSmall,
  TooLarge,
  StrictViolation,
  ZeroElement,
  LevelMismatch,
  NotSquare,
  AmbientMismatch,
  BadUnitOrder,
  WeightOutOfRange,
  DegreeOutOfRange,
  NotInjective,
  DimensionMismatch,
  NotComposable,
  NotEquivariant,
  IncompleteEigenbasis,
  InternalMismatch,
  UnidentifiedFactor,
  UnknownLemma,
  NonNegative,
  BadResidue,
  NotFundamental,
  Ramified,
  CacheCorrupt,
  Usage,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::StrictViolation: return "StrictViolation";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::BadUnitOrder: return "BadUnitOrder";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::IncompleteEigenbasis: return "IncompleteEigenbasis";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::UnidentifiedFactor: return "UnidentifiedFactor";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::NonNegative: return "NonNegative";
    case ErrorCode::BadResidue: return "BadResidue";
    case ErrorCode::NotFundamental: return "NotFundamental";
    case ErrorCode::Ramified: return "Ramified";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weightred
