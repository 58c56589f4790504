#include "besov/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace besov {

namespace {

double log1p_exp(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double log_add(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  if (std::isinf(x) || std::isinf(y)) return std::numeric_limits<double>::infinity();
  double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

double log_term(const SequenceSpec& spec, long j, double log_norm) {
  const double c = spec.exponent_coeff.to_double();
  const double base = c * static_cast<double>(j) * spec.log_det_abs;
  if (spec.norm_power == 0) return base + std::log(2.0);
  return base + log1p_exp(static_cast<double>(spec.norm_power) * log_norm);
}

/// Sign of coeff * ratio + n where ratio = ln|det| / log_rate (log_rate > 0).
/// The term's log-rate is log_rate * (coeff * ratio + n).
TermWitness classify_term(const SequenceSpec& spec, const TailGrowth& tail, const QuadSurd& coeff,
                          unsigned n, bool plus, bool norm_term, double tol) {
  TermWitness w;
  w.plus_tail = plus;
  w.norm_term = norm_term;
  w.poly_degree = norm_term ? tail.poly_degree : 0;
  const double ratio = tail.det_log_ratio ? tail.det_log_ratio->convert_to<double>()
                                          : spec.log_det_abs / tail.log_rate;
  const double scaled = coeff.to_double() * ratio + static_cast<double>(n);
  w.log_rate = tail.log_rate * scaled;
  if (n == 0) {
    w.sign = coeff.sign();
  } else if (tail.det_log_ratio) {
    w.sign = (coeff * QuadSurd(*tail.det_log_ratio) + QuadSurd(static_cast<int>(n))).sign();
  } else if (coeff.is_zero()) {
    w.sign = 1;  // n > 0 and no determinant compensation
  } else if (std::abs(scaled) < tol) {
    w.exact = false;
    w.sign = 0;
  } else {
    w.sign = scaled < 0 ? -1 : 1;
  }
  return w;
}

}  // namespace

std::string_view to_string(Domain domain) {
  return domain == Domain::Integers ? "Z" : "N0";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::BoundaryUncertain: return "boundary_uncertain";
  }
  return "?";
}

std::string_view to_string(ProbeResult::Kind kind) {
  switch (kind) {
    case ProbeResult::Kind::ConvergentEstimate: return "convergent";
    case ProbeResult::Kind::DivergenceDetected: return "divergent";
    case ProbeResult::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

double ProbeResult::estimate() const { return std::exp(log_estimate); }

SequenceSpec build_sequence_spec(const AnalyzedMatrix& a, const EmbeddingParams& params,
                                 const ExtReal& t, Domain domain) {
  if (!a.is_expansive) throw Error(ErrorCode::NotExpansive, "matrix is not expansive");
  SequenceSpec spec;
  spec.log_det_abs = a.log_det_abs;
  spec.exponent_coeff = QuadSurd(params.p.reciprocal() - t.reciprocal()) - params.alpha;
  spec.norm_power = params.n;
  const auto& top = a.top();
  const auto& bottom = a.bottom();
  spec.plus_tail = {std::log(top.modulus), params.n * (top.max_jordan_block - 1),
                    a.exact_log_ratio.front()};
  spec.minus_tail = {std::log(bottom.modulus), params.n * (bottom.max_jordan_block - 1),
                     a.exact_log_ratio.back()};
  spec.domain = domain;
  return spec;
}

double log_term_value(const SequenceSpec& spec, const AnalyzedMatrix& a, long j) {
  const double log_norm = spec.norm_power == 0 ? 0.0 : log_matrix_power_norm(a.matrix.values(), j);
  return log_term(spec, j, log_norm);
}

double term_value(const SequenceSpec& spec, const AnalyzedMatrix& a, long j) {
  const double l = log_term_value(spec, a, j);
  if (l > std::log(std::numeric_limits<double>::max())) {
    throw Error(ErrorCode::Overflow, "a_" + std::to_string(j) + " exceeds the double range");
  }
  return std::exp(l);
}

MembershipResult classify_membership(const SequenceSpec& spec, const ExtReal& s, double tol) {
  MembershipResult out;
  const QuadSurd& c = spec.exponent_coeff;
  // Plus tail: |det|^{cj} and |det|^{cj} lambda_max^{nj}. Minus tail, per step
  // i = -j: |det|^{-ci} and |det|^{-ci} lambda_min^{-ni}.
  out.witness.push_back(classify_term(spec, spec.plus_tail, c, 0, true, false, tol));
  out.witness.push_back(classify_term(spec, spec.plus_tail, c, spec.norm_power, true, true, tol));
  if (spec.domain == Domain::Integers) {
    out.witness.push_back(classify_term(spec, spec.minus_tail, -c, 0, false, false, tol));
    auto w = classify_term(spec, spec.minus_tail, c, spec.norm_power, false, true, tol);
    // The minus-tail norm term decays at rate -(c*ratio + n) per step.
    w.sign = -w.sign;
    w.log_rate = -w.log_rate;
    out.witness.push_back(w);
  }

  bool out_of = false;
  bool uncertain = false;
  for (const auto& w : out.witness) {
    if (!w.exact) {
      uncertain = true;
      continue;
    }
    if (w.sign > 0) out_of = true;
    if (w.sign == 0 && (!s.is_infinite() || w.poly_degree > 0)) out_of = true;
  }
  if (out_of) {
    out.status = Membership::Out;
  } else if (uncertain) {
    out.status = Membership::BoundaryUncertain;
  } else {
    out.status = Membership::In;
  }
  return out;
}

namespace {

struct TailScan {
  // index i - 1 <-> step i away from 0 (i >= 1)
  std::vector<double> log_terms;
  std::vector<double> log_norms;
  bool failed = false;
  std::string note;
};

TailScan scan_tail(const SequenceSpec& spec, const AnalyzedMatrix& a, bool minus, long j_max) {
  TailScan scan;
  scan.log_terms.reserve(static_cast<std::size_t>(j_max));
  scan.log_norms.reserve(static_cast<std::size_t>(j_max));
  try {
    std::optional<PowerNormWalker> walker;
    if (spec.norm_power != 0) walker.emplace(a.matrix.values(), minus);
    for (long i = 1; i <= j_max; ++i) {
      double log_norm = 0.0;
      if (walker) {
        walker->advance();
        log_norm = walker->log_norm();
      }
      scan.log_norms.push_back(log_norm);
      scan.log_terms.push_back(log_term(spec, minus ? -i : i, log_norm));
    }
  } catch (const Error& e) {
    scan.failed = true;
    scan.note = e.what();
  }
  return scan;
}

/// Maxima of the log terms over the last two blocks of length b: {older, newer}.
std::pair<double, double> block_maxima(const std::vector<double>& log_terms, long b) {
  const auto end = log_terms.end();
  const double newer = *std::max_element(end - b, end);
  const double older = *std::max_element(end - 2 * b, end - b);
  return {older, newer};
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln of an upper bound for sum_{i > J} a_{±i}^s, or +inf when no bound applies.
/// a = u + v with u = |det|^{cj} and v = u ||A^j||^n. The u part is geometric;
/// the v part uses ||A^{j+kL}|| <= ||A^j|| ||A^L||^k for a block length L <= J / 2.
double log_tail_bound(const SequenceSpec& spec, const TailScan& scan, bool minus, double sv) {
  const double inf = std::numeric_limits<double>::infinity();
  const long jm = static_cast<long>(scan.log_terms.size());
  const double c = spec.exponent_coeff.to_double();
  const double step = (minus ? -c : c) * spec.log_det_abs * sv;  // ln u_{i+1}^s - ln u_i^s
  if (!(step < 0.0)) return inf;
  const double n = static_cast<double>(spec.norm_power);
  auto log_v_s = [&](long i) { return step * static_cast<double>(i) + sv * n * scan.log_norms[i - 1]; };

  const double tail_u = step * static_cast<double>(jm + 1) - std::log(-std::expm1(step));
  double tail_v = tail_u;
  if (spec.norm_power != 0) {
    // suffix[k] = ln sum_{i = jm - k + 1 .. jm} v_i^s
    std::vector<double> suffix(static_cast<std::size_t>(jm / 2) + 1, kNegInf);
    for (long k = 1; k <= jm / 2; ++k) suffix[k] = log_add(suffix[k - 1], log_v_s(jm - k + 1));
    tail_v = inf;
    for (long l = jm / 2; l >= 1; l /= 2) {
      const double log_q = log_v_s(l);
      if (!(log_q < 0.0)) continue;
      tail_v = std::min(tail_v, log_q - std::log(-std::expm1(log_q)) + suffix[l]);
    }
    if (tail_v == inf) return inf;
  }
  // (u + v)^s <= max(1, 2^{s-1}) (u^s + v^s)
  const double log_k = sv > 1.0 ? (sv - 1.0) * std::log(2.0) : 0.0;
  return log_k + log_add(tail_u, tail_v);
}

}  // namespace

ProbeResult numeric_probe(const SequenceSpec& spec, const AnalyzedMatrix& a, const ExtReal& s,
                          const ProbeOptions& opts) {
  ProbeResult result;
  if (opts.ratio_window < 2 || opts.j_max < 2 * opts.ratio_window) {
    result.note = "need j_max >= 2 * ratio_window and ratio_window >= 2";
    return result;
  }
  const long block = std::max(opts.ratio_window, opts.j_max / 4);
  const double head = log_term(spec, 0, 0.0);
  std::vector<TailScan> tails;
  tails.push_back(scan_tail(spec, a, false, opts.j_max));
  if (spec.domain == Domain::Integers) tails.push_back(scan_tail(spec, a, true, opts.j_max));
  for (const auto& t : tails) {
    if (t.failed) {
      result.note = t.note;
      return result;
    }
  }

  const bool sup_norm = s.is_infinite();
  const double sv = sup_norm ? 1.0 : s.to_double();
  double log_total = sup_norm ? head : sv * head;
  for (const auto& t : tails) {
    for (double l : t.log_terms) log_total = sup_norm ? std::max(log_total, l) : log_add(log_total, sv * l);
  }
  result.log_estimate = log_total;

  for (std::size_t ti = 0; ti < tails.size(); ++ti) {
    const auto [older, newer] = block_maxima(tails[ti].log_terms, block);
    const bool growing = sup_norm ? newer - older > opts.envelope_slack
                                  : newer > opts.log_floor && newer - older >= -opts.envelope_slack;
    if (growing) {
      result.kind = ProbeResult::Kind::DivergenceDetected;
      result.at_j = (ti == 0 ? 1 : -1) * opts.j_max;
      result.note = sup_norm ? "envelope keeps growing" : "envelope fails to decay";
      return result;
    }
  }
  if (sup_norm) {
    result.kind = ProbeResult::Kind::ConvergentEstimate;
    result.note = "bounded";
    return result;
  }

  double tail_bound = kNegInf;
  for (std::size_t ti = 0; ti < tails.size(); ++ti) {
    tail_bound = log_add(tail_bound, log_tail_bound(spec, tails[ti], ti == 1, sv));
  }
  if (tail_bound <= log_total + std::log(opts.tail_fraction)) {
    result.kind = ProbeResult::Kind::ConvergentEstimate;
    result.note = "tail bound certified";
  } else {
    result.note = "tail bound too large for j_max";
  }
  return result;
}

std::vector<ProbeRow> probe_rows(const SequenceSpec& spec, const AnalyzedMatrix& a, const ExtReal& s,
                                 long j_max) {
  std::vector<ProbeRow> rows;
  const bool sup_norm = s.is_infinite();
  const double sv = sup_norm ? 1.0 : s.to_double();
  double running = -std::numeric_limits<double>::infinity();
  auto push = [&](long j, double l) {
    running = sup_norm ? std::max(running, l) : log_add(running, sv * l);
    rows.push_back({j, l, running});
  };
  push(0, log_term(spec, 0, 0.0));
  std::optional<PowerNormWalker> plus;
  std::optional<PowerNormWalker> minus;
  if (spec.norm_power != 0) {
    plus.emplace(a.matrix.values(), false);
    if (spec.domain == Domain::Integers) minus.emplace(a.matrix.values(), true);
  }
  for (long i = 1; i <= j_max; ++i) {
    double ln = 0.0;
    if (plus) {
      plus->advance();
      ln = plus->log_norm();
    }
    push(i, log_term(spec, i, ln));
    if (spec.domain == Domain::Integers) {
      double lm = 0.0;
      if (minus) {
        minus->advance();
        lm = minus->log_norm();
      }
      push(-i, log_term(spec, -i, lm));
    }
  }
  return rows;
}

}  // namespace besov
