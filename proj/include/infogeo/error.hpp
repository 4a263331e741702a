#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infogeo {

enum class ErrorCode {
  // input validation
  NegativeProbability,
  NotNormalized,
  ShapeMismatch,
  DuplicateName,
  NameCollision,
  EmptySample,
  OutOfRangeOutcome,
  SizeMismatch,
  NotUnitary,
  BadScheme,
  MalformedInput,
  // preconditions
  EmptySubset,
  IndexOutOfRange,
  ZeroCondition,
  OverlappingSubsets,
  TooFewParts,
  SubsetTooSmall,
  SameVariable,
  TooFewVariables,
  DuplicateIndex,
  NTooSmall,
  EmptySettings,
  // numeric faults
  NegativeRadicand,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeProbability: return "NEGATIVE_PROBABILITY";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::DuplicateName: return "DUPLICATE_NAME";
    case ErrorCode::NameCollision: return "NAME_COLLISION";
    case ErrorCode::EmptySample: return "EMPTY_SAMPLE";
    case ErrorCode::OutOfRangeOutcome: return "OUT_OF_RANGE_OUTCOME";
    case ErrorCode::SizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::NotUnitary: return "NOT_UNITARY";
    case ErrorCode::BadScheme: return "BAD_SCHEME";
    case ErrorCode::MalformedInput: return "MALFORMED_INPUT";
    case ErrorCode::EmptySubset: return "EMPTY_SUBSET";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::ZeroCondition: return "ZERO_CONDITION";
    case ErrorCode::OverlappingSubsets: return "OVERLAPPING_SUBSETS";
    case ErrorCode::TooFewParts: return "TOO_FEW_PARTS";
    case ErrorCode::SubsetTooSmall: return "SUBSET_TOO_SMALL";
    case ErrorCode::SameVariable: return "SAME_VARIABLE";
    case ErrorCode::TooFewVariables: return "TOO_FEW_VARIABLES";
    case ErrorCode::DuplicateIndex: return "DUPLICATE_INDEX";
    case ErrorCode::NTooSmall: return "N_TOO_SMALL";
    case ErrorCode::EmptySettings: return "EMPTY_SETTINGS";
    case ErrorCode::NegativeRadicand: return "NEGATIVE_RADICAND";
  }
  return "UNKNOWN";
}

enum class ErrorKind { Validation, Precondition, NumericFault };

constexpr ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeRadicand:
      return ErrorKind::NumericFault;
    case ErrorCode::EmptySubset:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::ZeroCondition:
    case ErrorCode::OverlappingSubsets:
    case ErrorCode::TooFewParts:
    case ErrorCode::SubsetTooSmall:
    case ErrorCode::SameVariable:
    case ErrorCode::TooFewVariables:
    case ErrorCode::DuplicateIndex:
    case ErrorCode::NTooSmall:
    case ErrorCode::EmptySettings:
      return ErrorKind::Precondition;
    default:
      return ErrorKind::Validation;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace infogeo
