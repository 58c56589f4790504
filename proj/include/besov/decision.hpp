#pragma once

// Tri-state embedding decisions with a full condition trace.
//
// Two routes exist for each variant: the closed-form tables over (n, n*, the
// isotropy degree, AND status, p, q, r) and the generic route that classifies
// the criterion sequences directly. They are independent implementations and
// must never contradict each other.

#include <string>
#include <string_view>
#include <vector>

#include "besov/exponent.hpp"
#include "besov/sequence.hpp"
#include "besov/spectral.hpp"

namespace besov {

enum class Outcome { Embeds, DoesNotEmbed, Undecided };
enum class Variant { Homogeneous, Inhomogeneous };
enum class Route { ClosedForm, Summability };
enum class CheckStatus { Satisfied, Violated, NotApplicable, Boundary };
enum class CheckRole { Necessary, Sufficient };

std::string_view to_string(Outcome o);
std::string_view to_string(Variant v);
std::string_view to_string(Route r);
std::string_view to_string(CheckStatus s);
std::string_view to_string(CheckRole r);

struct ConditionCheck {
  std::string label;
  std::string clause_ref;
  CheckRole role = CheckRole::Necessary;
  CheckStatus status = CheckStatus::NotApplicable;
  std::string detail;
};

struct Verdict {
  Outcome outcome = Outcome::Undecided;
  Variant variant = Variant::Inhomogeneous;
  Route route = Route::ClosedForm;
  std::vector<ConditionCheck> trace;
  std::vector<Warning> warnings;
  DerivedExponents derived;

  bool has_warning(WarningKind kind) const;
};

struct DecisionOptions {
  double boundary_tol = 1e-9;
};

DerivedExponents derive_exponents(const AnalyzedMatrix& a, const EmbeddingParams& params);

/// Throws NotExpansive. The outcome never depends on the matrix.
Verdict decide_homogeneous(const AnalyzedMatrix& a, const EmbeddingParams& params,
                           const DecisionOptions& opts = {});

/// Throws NotExpansive. Decides on the normal form's spectral data.
Verdict decide_inhomogeneous(const AnalyzedMatrix& a, const EmbeddingParams& params,
                             const DecisionOptions& opts = {});

Verdict decide_closed_form(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                           const DecisionOptions& opts = {});

/// Throws NotExpansive.
Verdict decide_via_summability(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                               const DecisionOptions& opts = {});

/// True when the necessary and sufficient criteria provably coincide.
bool sharpness_region(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                      const DecisionOptions& opts = {});

}  // namespace besov
