#pragma once

#include <stdexcept>
#include <string>

namespace kms {

// Machine-readable failure codes shared by every module.
enum class ErrorCode {
  SumMismatch,
  EmptySignature,
  InvalidSignature,
  NonIntegralGenus,
  NotPrimitive,
  EdgeBalance,
  LegOrder,
  VertexSum,
  LevelOrientation,
  LevelNormalization,
  Stability,
  GenusMismatch,
  Disconnected,
  MalformedGraph,
  InvalidPassage,
  NotHorizontal,
  BoundsTooLarge,
  Inconsistent,
  DeckOrder,
  EnhancementLift,
  DimensionMismatch,
  ExponentMismatch,
  InvalidRole,
  IdentityViolation,
  ShapeMismatch,
  DegenerateResidue,
  DomainError,
  BoundaryPoint,
  NonConvergent,
  UnsupportedFormat,
  ParseError,
  Overflow,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::EmptySignature: return "EmptySignature";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::NonIntegralGenus: return "NonIntegralGenus";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::EdgeBalance: return "EdgeBalance";
    case ErrorCode::LegOrder: return "LegOrder";
    case ErrorCode::VertexSum: return "VertexSum";
    case ErrorCode::LevelOrientation: return "LevelOrientation";
    case ErrorCode::LevelNormalization: return "LevelNormalization";
    case ErrorCode::Stability: return "Stability";
    case ErrorCode::GenusMismatch: return "GenusMismatch";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::InvalidPassage: return "InvalidPassage";
    case ErrorCode::NotHorizontal: return "NotHorizontal";
    case ErrorCode::BoundsTooLarge: return "BoundsTooLarge";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::DeckOrder: return "DeckOrder";
    case ErrorCode::EnhancementLift: return "EnhancementLift";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::InvalidRole: return "InvalidRole";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateResidue: return "DegenerateResidue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code), detail_(msg) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace kms
