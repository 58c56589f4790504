#pragma once

// The criterion sequences a_j = |det A|^{j(1/p - 1/t - alpha)} (1 + ||A^j||^n):
// closed-form l^s classification from growth envelopes, plus a numeric
// partial-sum probe that evaluates the actual terms.

#include <optional>
#include <string>
#include <vector>

#include "besov/exponent.hpp"
#include "besov/spectral.hpp"

namespace besov {

enum class Domain { Integers, Naturals };

std::string_view to_string(Domain domain);

/// Growth envelope of ||A^j||^n along one tail: ||A^{±j}|| ~ j^{m-1} rate^j.
struct TailGrowth {
  double log_rate = 0.0;  // ln(lambda_max) on the plus tail, ln(lambda_min) on the minus tail
  unsigned poly_degree = 0;
  /// ln|det A| / log_rate when it is provably rational.
  std::optional<Rational> det_log_ratio;
};

struct SequenceSpec {
  double log_det_abs = 0.0;
  QuadSurd exponent_coeff{0};  // 1/p - 1/t - alpha
  unsigned norm_power = 0;
  TailGrowth plus_tail;
  TailGrowth minus_tail;
  Domain domain = Domain::Naturals;
};

/// Throws NotExpansive unless a.is_expansive.
SequenceSpec build_sequence_spec(const AnalyzedMatrix& a, const EmbeddingParams& params,
                                 const ExtReal& t, Domain domain);

double log_term_value(const SequenceSpec& spec, const AnalyzedMatrix& a, long j);
/// a_j in linear scale; throws Overflow when it is not representable.
double term_value(const SequenceSpec& spec, const AnalyzedMatrix& a, long j);

enum class Membership { In, Out, BoundaryUncertain };

std::string_view to_string(Membership m);

/// Sign of one exponential term's log-rate on one tail.
struct TermWitness {
  bool plus_tail = true;
  bool norm_term = false;   // the |det|^{..} ||A^j||^n summand
  double log_rate = 0.0;    // per step away from j = 0
  unsigned poly_degree = 0;
  int sign = 0;             // -1, 0, +1
  bool exact = true;        // sign decided exactly (false: inside tolerance band)
};

struct MembershipResult {
  Membership status = Membership::In;
  std::vector<TermWitness> witness;
};

MembershipResult classify_membership(const SequenceSpec& spec, const ExtReal& s, double tol = 1e-9);

struct ProbeOptions {
  long j_max = 400;
  long ratio_window = 16;        // shortest block; blocks are max(ratio_window, j_max / 4) long
  double envelope_slack = 1e-2;  // allowed change of the block maxima (log scale) before calling a trend
  double log_floor = -690.0;     // terms below e^-690 (~1e-300) never count as divergent
  double tail_fraction = 1e-12;  // geometric tail bound relative to the partial sum
};

struct ProbeResult {
  enum class Kind { ConvergentEstimate, DivergenceDetected, Inconclusive } kind = Kind::Inconclusive;
  double log_estimate = 0.0;  // ln of the partial sum (or of the sup for s = inf)
  long at_j = 0;              // where divergence was detected
  std::string note;

  double estimate() const;
};

std::string_view to_string(ProbeResult::Kind kind);

/// Independent check of classify_membership. Never throws for numeric reasons.
ProbeResult numeric_probe(const SequenceSpec& spec, const AnalyzedMatrix& a, const ExtReal& s,
                          const ProbeOptions& opts = {});

struct ProbeRow {
  long j = 0;
  double log_term = 0.0;
  double log_partial_sum = 0.0;  // of a_j^s
};

/// Rows in summation order: 0, 1, 2, ... on N0; 0, 1, -1, 2, -2, ... on Z.
std::vector<ProbeRow> probe_rows(const SequenceSpec& spec, const AnalyzedMatrix& a, const ExtReal& s,
                                 long j_max);

}  // namespace besov
