#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace besov {

enum class ErrorCode {
  ParseError,
  InvalidArgument,
  SingularMatrix,
  EigenSolverFailure,
  NotAnEigenvalue,
  NotExpansive,
  Overflow,
  IllConditioned,
  IoError,
  Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

enum class WarningKind {
  ClusterAmbiguity,
  Boundary,
  NormalFormMergeAffectsAND,
};

std::string_view warning_kind_name(WarningKind kind) noexcept;

struct Warning {
  WarningKind kind;
  std::string detail;

  friend bool operator==(const Warning&, const Warning&) = default;
};

}  // namespace besov
