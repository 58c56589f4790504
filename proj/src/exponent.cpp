#include "besov/exponent.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "besov/error.hpp"

namespace besov {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::ParseError, std::string(what) + ": '" + std::string(text) + "'");
}

BigInt parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) parse_fail("expected digits", whole);
  BigInt v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) parse_fail("unexpected character", whole);
    v = v * 10 + (c - '0');
  }
  return v;
}

BigInt pow10(long e) {
  BigInt v = 1;
  for (long i = 0; i < e; ++i) v *= 10;
  return v;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = text.substr(0, epos);
    std::string_view exp_text = text.substr(epos + 1);
    bool neg = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      neg = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    BigInt e = parse_digits(exp_text, whole);
    if (e > 4000) parse_fail("exponent out of range", whole);
    exponent = e.convert_to<long>();
    if (neg) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_len = static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  Rational value(parse_digits(digits, whole));
  long scale = exponent - frac_len;
  if (scale >= 0) return value * Rational(pow10(scale));
  return value / Rational(pow10(-scale));
}

/// Splits k = s^2 * f with f squarefree.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t k) {
  std::uint64_t s = 1;
  std::uint64_t f = 1;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    while (k % (p * p) == 0) {
      k /= p * p;
      s *= p;
    }
    if (k % p == 0) {
      k /= p;
      f *= p;
    }
  }
  return {s, f * k};
}

}  // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite number");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits: scale the mantissa to an integer.
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp >= 0) return r * Rational(BigInt(1) << exp);
  return r / Rational(BigInt(1) << -exp);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) parse_fail("empty number", text);
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_digits(trim(s.substr(0, slash)), text);
    BigInt den = parse_digits(trim(s.substr(slash + 1)), text);
    if (den == 0) parse_fail("zero denominator", text);
    value = Rational(num, den);
  } else {
    value = parse_decimal(s, text);
  }
  return neg ? Rational(-value) : value;
}

std::string to_string(const Rational& x) { return x.str(); }

// ---------------------------------------------------------------------------

QuadSurd::QuadSurd(Rational a, Rational b, std::uint64_t radicand)
    : a_(std::move(a)), b_(std::move(b)), k_(radicand) {
  if (k_ == 0) {
    b_ = 0;
    k_ = 1;
  }
  normalize();
}

void QuadSurd::normalize() {
  if (k_ != 1) {
    auto [s, f] = split_square(k_);
    b_ *= s;
    k_ = f;
  }
  if (k_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) k_ = 1;
}

QuadSurd QuadSurd::sqrt_of(std::uint64_t k) { return QuadSurd(Rational(0), Rational(1), k); }

int QuadSurd::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * k_;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for squarefree k > 1
}

double QuadSurd::to_double() const {
  return a_.convert_to<double>() +
         b_.convert_to<double>() * std::sqrt(static_cast<double>(k_));
}

QuadSurd QuadSurd::operator-() const { return QuadSurd(-a_, -b_, k_); }

QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
  if (x.b_ == 0) return QuadSurd(x.a_ + y.a_, y.b_, y.k_);
  if (y.b_ == 0 || x.k_ == y.k_) return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, x.k_);
  throw Error(ErrorCode::InvalidArgument, "cannot add surds with different radicands");
}

QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }

QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
  if (x.b_ == 0) return QuadSurd(x.a_ * y.a_, x.a_ * y.b_, y.k_);
  if (y.b_ == 0) return QuadSurd(x.a_ * y.a_, x.b_ * y.a_, x.k_);
  if (x.k_ == y.k_) {
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * x.k_, x.a_ * y.b_ + x.b_ * y.a_, x.k_);
  }
  throw Error(ErrorCode::InvalidArgument, "cannot multiply surds with different radicands");
}

bool operator==(const QuadSurd& x, const QuadSurd& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && x.k_ == y.k_;
}

std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const QuadSurd& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  std::string surd = "sqrt(" + std::to_string(x.radicand()) + ")";
  const Rational& b = x.surd_coeff();
  std::string term;
  if (b == 1) {
    term = surd;
  } else if (b == -1) {
    term = "-" + surd;
  } else {
    term = to_string(b) + "*" + surd;
  }
  if (x.rational_part() == 0) return term;
  if (b > 0) return to_string(x.rational_part()) + "+" + term;
  return to_string(x.rational_part()) + term;
}

QuadSurd parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) parse_fail("empty number", text);
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    neg = body.front() == '-';
    body = trim(body.substr(1));
  }
  auto spos = body.find("sqrt(");
  if (spos == std::string_view::npos) return QuadSurd(parse_rational(s));

  Rational coeff(1);
  if (spos > 0) {
    std::string_view prefix = trim(body.substr(0, spos));
    if (prefix.empty() || prefix.back() != '*') parse_fail("expected '*' before sqrt", text);
    prefix.remove_suffix(1);
    coeff = parse_rational(prefix);
  }
  std::string_view rest = body.substr(spos + 5);
  auto close = rest.find(')');
  if (close == std::string_view::npos || !trim(rest.substr(close + 1)).empty()) {
    parse_fail("malformed sqrt", text);
  }
  BigInt k = parse_digits(trim(rest.substr(0, close)), text);
  if (k > BigInt(std::numeric_limits<std::uint32_t>::max())) parse_fail("radicand too large", text);
  QuadSurd root = QuadSurd::sqrt_of(k.convert_to<std::uint64_t>());
  QuadSurd v = QuadSurd(coeff) * root;
  return neg ? -v : v;
}

// ---------------------------------------------------------------------------

ExtReal::ExtReal(Rational value) : value_(std::move(value)) {
  if (*value_ <= 0) {
    throw Error(ErrorCode::InvalidArgument, "exponent must be positive, got " + value_->str());
  }
}

const Rational& ExtReal::finite_value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "exponent is infinite");
  return *value_;
}

Rational ExtReal::reciprocal() const { return value_ ? Rational(1 / *value_) : Rational(0); }

double ExtReal::to_double() const {
  return value_ ? value_->convert_to<double>() : std::numeric_limits<double>::infinity();
}

bool operator==(const ExtReal& x, const ExtReal& y) { return x.value_ == y.value_; }

std::strong_ordering operator<=>(const ExtReal& x, const ExtReal& y) {
  if (x.is_infinite() || y.is_infinite()) {
    return static_cast<int>(x.is_infinite()) <=> static_cast<int>(y.is_infinite());
  }
  if (*x.value_ < *y.value_) return std::strong_ordering::less;
  if (*x.value_ > *y.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const ExtReal& x) {
  return x.is_infinite() ? std::string("inf") : to_string(x.finite_value());
}

ExtReal parse_ext_real(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "Inf" || s == "infinity" || s == "Infinity" || s == "∞") {
    return ExtReal::infinity();
  }
  Rational v = parse_rational(s);
  if (v <= 0) parse_fail("exponent must be positive", text);
  return ExtReal(v);
}

ExtReal conjugate(const ExtReal& q) {
  if (q.is_infinite()) return ExtReal(1);
  const Rational& v = q.finite_value();
  if (v <= 1) return ExtReal::infinity();
  return ExtReal(v / (v - 1));
}

ExtReal q_nabla(const ExtReal& q) { return std::min(q, conjugate(q)); }

ExtReal composite_exponent(const ExtReal& t, const ExtReal& r) {
  if (t.is_infinite()) return conjugate(r);
  if (r.is_infinite()) return t;  // (inf)' = 1
  if (r <= t) return ExtReal::infinity();
  const Rational& tv = t.finite_value();
  const Rational& rv = r.finite_value();
  return ExtReal(tv * rv / (rv - tv));
}

QuadSurd n_star(const EmbeddingParams& params) {
  return params.alpha + QuadSurd(params.q.reciprocal() - params.p.reciprocal());
}

std::string_view to_string(ThresholdOrder order) {
  switch (order) {
    case ThresholdOrder::Below: return "below";
    case ThresholdOrder::Equal: return "equal";
    case ThresholdOrder::Above: return "above";
    case ThresholdOrder::Boundary: return "boundary";
  }
  return "?";
}

ThresholdOrder DerivedExponents::order_of(unsigned n, double tol) const {
  if (threshold_exact) {
    int s = (QuadSurd(static_cast<int>(n)) - *threshold_exact).sign();
    if (s < 0) return ThresholdOrder::Below;
    if (s > 0) return ThresholdOrder::Above;
    return ThresholdOrder::Equal;
  }
  double diff = static_cast<double>(n) - threshold;
  if (std::abs(diff) < tol) return ThresholdOrder::Boundary;
  return diff < 0 ? ThresholdOrder::Below : ThresholdOrder::Above;
}

bool DerivedExponents::threshold_maybe_natural(double tol) const {
  if (threshold_exact) {
    const QuadSurd& t = *threshold_exact;
    if (!t.is_rational()) return false;
    const Rational& v = t.rational_part();
    return v >= 0 && boost::multiprecision::denominator(v) == 1;
  }
  if (threshold < -tol) return false;
  return std::abs(threshold - std::round(threshold)) < tol;
}

DerivedExponents derive_exponents(const EmbeddingParams& params, double iso_degree,
                                  const std::optional<Rational>& iso_degree_exact) {
  DerivedExponents d;
  d.q_conj = conjugate(params.q);
  d.q_nabla = q_nabla(params.q);
  d.n_star = n_star(params);
  d.iso_degree = iso_degree_exact ? iso_degree_exact->convert_to<double>() : iso_degree;
  d.iso_degree_exact = iso_degree_exact;
  d.threshold = d.iso_degree * d.n_star.to_double();
  if (iso_degree_exact) {
    d.threshold_exact = QuadSurd(*iso_degree_exact) * d.n_star;
  } else if (d.n_star.is_zero()) {
    d.threshold_exact = QuadSurd(0);
  }
  return d;
}

}  // namespace besov
