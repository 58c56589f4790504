#include "besov/decision.hpp"

#include <algorithm>
#include <sstream>

namespace besov {

namespace {

std::string str(const ExtReal& x) { return to_string(x); }
std::string str(const QuadSurd& x) { return to_string(x); }

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string threshold_text(const DerivedExponents& d) {
  if (d.threshold_exact) return str(*d.threshold_exact);
  return fmt_double(d.threshold);
}

CheckStatus holds(bool ok) { return ok ? CheckStatus::Satisfied : CheckStatus::Violated; }

void require_expansive(const AnalyzedMatrix& a) {
  if (!a.is_expansive) throw Error(ErrorCode::NotExpansive, "matrix is not expansive");
}

Outcome settle(const std::vector<ConditionCheck>& trace, bool sufficient_met) {
  for (const auto& c : trace) {
    if (c.role == CheckRole::Necessary && c.status == CheckStatus::Violated) return Outcome::DoesNotEmbed;
  }
  return sufficient_met ? Outcome::Embeds : Outcome::Undecided;
}

bool all_satisfied(const std::vector<ConditionCheck>& trace, std::initializer_list<std::size_t> idx) {
  return std::all_of(idx.begin(), idx.end(),
                     [&](std::size_t i) { return trace[i].status == CheckStatus::Satisfied; });
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Embeds: return "embeds";
    case Outcome::DoesNotEmbed: return "does_not_embed";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(Variant v) { return v == Variant::Homogeneous ? "homogeneous" : "inhomogeneous"; }

std::string_view to_string(Route r) { return r == Route::ClosedForm ? "closed_form" : "summability"; }

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Satisfied: return "satisfied";
    case CheckStatus::Violated: return "violated";
    case CheckStatus::NotApplicable: return "not_applicable";
    case CheckStatus::Boundary: return "boundary";
  }
  return "?";
}

std::string_view to_string(CheckRole r) { return r == CheckRole::Necessary ? "necessary" : "sufficient"; }

bool Verdict::has_warning(WarningKind kind) const {
  return std::any_of(warnings.begin(), warnings.end(), [kind](const Warning& w) { return w.kind == kind; });
}

DerivedExponents derive_exponents(const AnalyzedMatrix& a, const EmbeddingParams& params) {
  return derive_exponents(params, isotropy_degree(a), exact_isotropy_degree(a));
}

// ---------------------------------------------------------------------------

Verdict decide_homogeneous(const AnalyzedMatrix& a, const EmbeddingParams& params,
                           const DecisionOptions& /*opts*/) {
  require_expansive(a);
  Verdict v;
  v.variant = Variant::Homogeneous;
  v.route = Route::ClosedForm;
  v.derived = derive_exponents(a, params);
  const auto& d = v.derived;
  const auto& [p, q, r, alpha, n] = params;
  const bool degenerate = n == 0 && d.n_star.is_zero();
  const std::string n_text = "n = " + std::to_string(n) + ", n* = " + str(d.n_star);
  auto& t = v.trace;

  t.push_back({"n = n* = 0", "homogeneous.necessary.i", CheckRole::Necessary, holds(degenerate), n_text});
  t.push_back({"p <= q and r <= q", "homogeneous.necessary.ii", CheckRole::Necessary,
               holds(p <= q && r <= q), "p = " + str(p) + ", q = " + str(q) + ", r = " + str(r)});
  if (q.is_infinite()) {
    t.push_back({"q = inf implies r <= 1", "homogeneous.necessary.iii", CheckRole::Necessary,
                 holds(r <= ExtReal(1)), "r = " + str(r)});
  } else {
    t.push_back({"q = inf implies r <= 1", "homogeneous.necessary.iii", CheckRole::Necessary,
                 CheckStatus::NotApplicable, "q = " + str(q) + " is finite"});
  }
  if (p == q) {
    t.push_back({"p = q implies r <= 2", "homogeneous.necessary.iv", CheckRole::Necessary,
                 holds(r <= ExtReal(2)), "r = " + str(r)});
  } else {
    t.push_back({"p = q implies r <= 2", "homogeneous.necessary.iv", CheckRole::Necessary,
                 CheckStatus::NotApplicable, "p != q"});
  }
  t.push_back({"n = n* = 0", "homogeneous.sufficient.i", CheckRole::Sufficient, holds(degenerate), n_text});
  t.push_back({"p <= q and r <= q_nabla", "homogeneous.sufficient.ii", CheckRole::Sufficient,
               holds(p <= q && r <= d.q_nabla),
               "p = " + str(p) + ", q = " + str(q) + ", r = " + str(r) + ", q_nabla = " + str(d.q_nabla)});

  v.outcome = settle(t, all_satisfied(t, {4, 5}));
  return v;
}

// ---------------------------------------------------------------------------

Verdict decide_inhomogeneous(const AnalyzedMatrix& a, const EmbeddingParams& params,
                             const DecisionOptions& opts) {
  require_expansive(a);
  const NormalForm nf = expansive_normal_form(a);
  Verdict v;
  v.variant = Variant::Inhomogeneous;
  v.route = Route::ClosedForm;
  v.warnings = a.warnings;
  if (normal_form_merge_affects_and(a)) {
    v.warnings.push_back({WarningKind::NormalFormMergeAffectsAND,
                          "largest-modulus class mixes distinct eigenvalues with a defective block"});
  }
  v.derived = derive_exponents(a, params);
  const auto& d = v.derived;
  const auto& [p, q, r, alpha, n] = params;
  const bool is_and = nf.is_and;
  const ThresholdOrder order = d.order_of(n, opts.boundary_tol);
  const bool equality = order == ThresholdOrder::Equal;
  const bool boundary = order == ThresholdOrder::Boundary;
  const std::string cmp = "n = " + std::to_string(n) + ", T = iso_degree * n* = " + threshold_text(d) +
                          " (iso_degree = " + fmt_double(d.iso_degree) + ", n* = " + str(d.n_star) + ")";
  if (boundary) {
    v.warnings.push_back({WarningKind::Boundary, "|n - T| below tolerance without an exact decision: " + cmp});
  }
  auto& t = v.trace;

  // Necessary conditions.
  t.push_back({"p <= q", "inhomogeneous.necessary.a", CheckRole::Necessary, holds(p <= q),
               "p = " + str(p) + ", q = " + str(q)});
  t.push_back({"n <= T", "inhomogeneous.necessary.b", CheckRole::Necessary,
               boundary ? CheckStatus::Boundary : holds(order != ThresholdOrder::Above), cmp});

  // Restrictions at n = T. Inside the boundary band a would-be violation is
  // only reported as Boundary since the premise itself is unresolved.
  auto at_equality = [&](bool premise, bool ok) {
    if (!(equality || boundary) || !premise) return CheckStatus::NotApplicable;
    if (ok) return CheckStatus::Satisfied;
    return boundary ? CheckStatus::Boundary : CheckStatus::Violated;
  };
  const std::string eq_note = equality ? "n = T" : (boundary ? "n ~ T (boundary)" : "n != T");
  t.push_back({"n = T implies r <= q", "inhomogeneous.necessary.c.i", CheckRole::Necessary,
               at_equality(true, r <= q), eq_note + ", r = " + str(r) + ", q = " + str(q)});
  t.push_back({"n = T and q = inf implies r <= 1", "inhomogeneous.necessary.c.ii", CheckRole::Necessary,
               at_equality(q.is_infinite(), r <= ExtReal(1)), eq_note + ", q = " + str(q) + ", r = " + str(r)});
  t.push_back({"n = T and p = q implies r <= 2", "inhomogeneous.necessary.c.iii", CheckRole::Necessary,
               at_equality(p == q, r <= ExtReal(2)), eq_note + ", p = " + str(p) + ", r = " + str(r)});
  t.push_back({"n = T and not AND implies n = n* = 0", "inhomogeneous.necessary.c.iv", CheckRole::Necessary,
               at_equality(!is_and, n == 0 && d.n_star.is_zero()),
               eq_note + ", AND = " + (is_and ? "true" : "false") + ", n* = " + str(d.n_star)});

  // Sufficient conditions: p <= q together with one of (b), (b'), (b'').
  t.push_back({"p <= q", "inhomogeneous.sufficient.a", CheckRole::Sufficient, holds(p <= q),
               "p = " + str(p) + ", q = " + str(q)});
  {
    CheckStatus s = CheckStatus::NotApplicable;
    if (order == ThresholdOrder::Below) s = CheckStatus::Satisfied;
    if (order == ThresholdOrder::Above) s = CheckStatus::Violated;
    if (boundary) s = CheckStatus::Boundary;
    t.push_back({"n < T", "inhomogeneous.sufficient.b", CheckRole::Sufficient, s, cmp});
  }
  const bool degenerate = n == 0 && d.n_star.is_zero();
  {
    CheckStatus s = CheckStatus::NotApplicable;
    if (degenerate) s = holds(r <= d.q_nabla);
    t.push_back({"n = n* = 0 and r <= q_nabla", "inhomogeneous.sufficient.b1", CheckRole::Sufficient, s,
                 "n = " + std::to_string(n) + ", n* = " + str(d.n_star) + ", r = " + str(r) +
                     ", q_nabla = " + str(d.q_nabla)});
  }
  {
    CheckStatus s = CheckStatus::NotApplicable;
    if (is_and && (equality || boundary)) {
      s = r <= d.q_nabla ? (boundary ? CheckStatus::Boundary : CheckStatus::Satisfied) : CheckStatus::Violated;
    }
    t.push_back({"AND, n = T and r <= q_nabla", "inhomogeneous.sufficient.b2", CheckRole::Sufficient, s,
                 eq_note + ", AND = " + (is_and ? "true" : "false") + ", r = " + str(r) +
                     ", q_nabla = " + str(d.q_nabla)});
  }

  const bool sufficient = t[6].status == CheckStatus::Satisfied &&
                          (t[7].status == CheckStatus::Satisfied || t[8].status == CheckStatus::Satisfied ||
                           t[9].status == CheckStatus::Satisfied);
  v.outcome = settle(t, sufficient);
  return v;
}

Verdict decide_closed_form(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                           const DecisionOptions& opts) {
  return variant == Variant::Homogeneous ? decide_homogeneous(a, params, opts)
                                         : decide_inhomogeneous(a, params, opts);
}

// ---------------------------------------------------------------------------

namespace {

CheckStatus from_membership(Membership m) {
  switch (m) {
    case Membership::In: return CheckStatus::Satisfied;
    case Membership::Out: return CheckStatus::Violated;
    case Membership::BoundaryUncertain: return CheckStatus::Boundary;
  }
  return CheckStatus::Boundary;
}

std::string membership_detail(const SequenceSpec& spec, const ExtReal& s, const MembershipResult& m) {
  std::ostringstream os;
  os << "coeff = " << to_string(spec.exponent_coeff) << " on " << to_string(spec.domain) << ", s = "
     << to_string(s) << ": " << to_string(m.status) << " [";
  bool first = true;
  for (const auto& w : m.witness) {
    if (!first) os << "; ";
    first = false;
    os << (w.plus_tail ? "+" : "-") << (w.norm_term ? "norm" : "det") << " rate " << fmt_double(w.log_rate)
       << " deg " << w.poly_degree << (w.exact ? "" : " (tolerance)");
  }
  os << "]";
  return os.str();
}

}  // namespace

Verdict decide_via_summability(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                               const DecisionOptions& opts) {
  require_expansive(a);
  Verdict v;
  v.variant = variant;
  v.route = Route::Summability;
  v.derived = derive_exponents(a, params);
  if (variant == Variant::Inhomogeneous) v.warnings = a.warnings;
  const auto& d = v.derived;
  const auto& [p, q, r, alpha, n] = params;
  const Domain main_domain = variant == Variant::Homogeneous ? Domain::Integers : Domain::Naturals;
  const std::string seq_q = variant == Variant::Homogeneous ? "a^(q)" : "a_+^(q)";
  auto& t = v.trace;
  bool uncertain = false;

  auto membership_check = [&](const std::string& label, const char* clause, CheckRole role, const ExtReal& tt,
                              Domain domain, const ExtReal& s) {
    const SequenceSpec spec = build_sequence_spec(a, params, tt, domain);
    const MembershipResult m = classify_membership(spec, s, opts.boundary_tol);
    if (m.status == Membership::BoundaryUncertain) uncertain = true;
    t.push_back({label, clause, role, from_membership(m.status), membership_detail(spec, s, m)});
  };
  auto skipped = [&](const std::string& label, const char* clause, const std::string& why) {
    t.push_back({label, clause, CheckRole::Necessary, CheckStatus::NotApplicable, why});
  };

  t.push_back({"p <= q", "summability.necessary.p_le_q", CheckRole::Necessary, holds(p <= q),
               "p = " + str(p) + ", q = " + str(q)});
  const ExtReal s_nec = composite_exponent(q, r);
  membership_check(seq_q + " in l^{q (r/q)'}", "summability.necessary.main", CheckRole::Necessary, q,
                   main_domain, s_nec);
  if (q.is_infinite()) {
    membership_check(seq_q + " in l^{r'}", "summability.necessary.q_infinite", CheckRole::Necessary, q,
                     main_domain, conjugate(r));
  } else {
    skipped(seq_q + " in l^{r'}", "summability.necessary.q_infinite", "q = " + str(q) + " is finite");
  }
  const ExtReal s_two = composite_exponent(ExtReal(2), r);
  if (!q.is_infinite()) {
    membership_check("a_+^(p) in l^{2 (r/2)'}", "summability.necessary.p_sequence", CheckRole::Necessary, p,
                     Domain::Naturals, s_two);
  } else {
    skipped("a_+^(p) in l^{2 (r/2)'}", "summability.necessary.p_sequence", "q = inf");
  }
  if (variant == Variant::Inhomogeneous && !q.is_infinite() && ExtReal(2) <= q) {
    membership_check("a_+^(2) in l^{2 (r/2)'}", "summability.necessary.two_sequence", CheckRole::Necessary,
                     ExtReal(2), Domain::Naturals, s_two);
  } else {
    skipped("a_+^(2) in l^{2 (r/2)'}", "summability.necessary.two_sequence",
            variant == Variant::Homogeneous ? "homogeneous variant" : "q outside [2, inf)");
  }

  t.push_back({"p <= q", "summability.sufficient.p_le_q", CheckRole::Sufficient, holds(p <= q),
               "p = " + str(p) + ", q = " + str(q)});
  membership_check(seq_q + " in l^{q_nabla (r/q_nabla)'}", "summability.sufficient.main", CheckRole::Sufficient,
                   q, main_domain, composite_exponent(d.q_nabla, r));

  if (uncertain) {
    v.warnings.push_back({WarningKind::Boundary, "a sequence growth rate sits within tolerance of zero"});
  }
  v.outcome = settle(t, t[5].status == CheckStatus::Satisfied && t[6].status == CheckStatus::Satisfied);
  return v;
}

bool sharpness_region(const AnalyzedMatrix& a, const EmbeddingParams& params, Variant variant,
                      const DecisionOptions& opts) {
  require_expansive(a);
  const ExtReal& q = params.q;
  const bool q_sharp = q.is_infinite() || q <= ExtReal(2);
  if (variant == Variant::Homogeneous || q_sharp) return q_sharp;
  const DerivedExponents d = derive_exponents(a, params);
  if (!d.threshold_maybe_natural(opts.boundary_tol)) return true;
  return !a.is_and && !d.n_star.is_zero();
}

}  // namespace besov
