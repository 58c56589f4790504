#include "besov/error.hpp"

namespace besov {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::NotExpansive: return "NotExpansive";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::string_view warning_kind_name(WarningKind kind) noexcept {
  switch (kind) {
    case WarningKind::ClusterAmbiguity: return "ClusterAmbiguity";
    case WarningKind::Boundary: return "Boundary";
    case WarningKind::NormalFormMergeAffectsAND: return "NormalFormMergeAffectsAND";
  }
  return "Unknown";
}

}  // namespace besov
