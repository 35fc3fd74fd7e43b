#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootgeom {

/// Machine-readable failure categories. The CLI prints `code_name()` verbatim,
/// so the spelling of each name is part of the external interface.
enum class ErrorCode {
  NotIndefinite,
  Degenerate,
  NoIntersection,
  InconsistentRelations,
  OnDirectionHyperplane,
  LeavesDomain,
  NotWeaklyHyperbolic,
  EmptyCloud,
  OnFace,
  NoConvergence,
  NotFacial,
  EmptyK,
  NotGenericUniversal,
  NotDominantPair,
  SearchExhausted,
  ParseError,
  SchemaError,
  AxiomError,
  UnsupportedRank,
  NotARoot,
  PreconditionFailed,
  DimensionTooLarge,
  UsageError,
  IoError,
};

constexpr std::string_view code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::InconsistentRelations: return "InconsistentRelations";
    case ErrorCode::OnDirectionHyperplane: return "OnDirectionHyperplane";
    case ErrorCode::LeavesDomain: return "LeavesDomain";
    case ErrorCode::NotWeaklyHyperbolic: return "NotWeaklyHyperbolic";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::OnFace: return "OnFace";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotFacial: return "NotFacial";
    case ErrorCode::EmptyK: return "EmptyK";
    case ErrorCode::NotGenericUniversal: return "NotGenericUniversal";
    case ErrorCode::NotDominantPair: return "NotDominantPair";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::AxiomError: return "AxiomError";
    case ErrorCode::UnsupportedRank: return "UnsupportedRank";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(code_name(code)) + ": " + what);
}

}  // namespace rootgeom
