#pragma once

// Integrability and smoothness exponents, kept exact wherever the inputs allow.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace besov {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational value of a finite double (its full binary expansion).
Rational rational_from_double(double x);

/// Parses "7", "-3/4", "0.125", "1e-3" into an exact rational. Decimal
/// literals are read as decimal fractions, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

/// Element a + b*sqrt(k) of a real quadratic field, k squarefree. k == 1
/// means the value is the plain rational a (b is then always zero).
class QuadSurd {
public:
  QuadSurd() = default;
  QuadSurd(int v) : a_(v) {}
  QuadSurd(Rational a) : a_(std::move(a)) {}
  QuadSurd(Rational a, Rational b, std::uint64_t radicand);

  /// sqrt(k) with the square part of k pulled out, e.g. sqrt(8) = 2*sqrt(2).
  static QuadSurd sqrt_of(std::uint64_t k);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coeff() const { return b_; }
  std::uint64_t radicand() const { return k_; }

  bool is_rational() const { return b_ == 0; }
  /// True when the value is q*sqrt(k) for rational q (including plain rationals).
  bool is_pure() const { return b_ == 0 || a_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// Exact sign: -1, 0 or +1.
  int sign() const;
  double to_double() const;

  QuadSurd operator-() const;
  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
  friend bool operator==(const QuadSurd& x, const QuadSurd& y);
  friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y);

private:
  void normalize();

  Rational a_{0};
  Rational b_{0};
  std::uint64_t k_{1};
};

std::string to_string(const QuadSurd& x);

/// Parses a real scalar: rational or decimal literal, "sqrt(k)", "-sqrt(k)",
/// or "<rational>*sqrt(k)".
QuadSurd parse_scalar(std::string_view text);

/// Exponent in (0, inf]. Infinity obeys 1/inf = 0.
class ExtReal {
public:
  /// Throws InvalidArgument unless value > 0.
  explicit ExtReal(Rational value);
  ExtReal(int value) : ExtReal(Rational(value)) {}

  static ExtReal infinity() { return ExtReal(); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& finite_value() const;  // precondition: !is_infinite()
  Rational reciprocal() const;
  double to_double() const;

  friend bool operator==(const ExtReal& x, const ExtReal& y);
  friend std::strong_ordering operator<=>(const ExtReal& x, const ExtReal& y);

private:
  ExtReal() = default;
  std::optional<Rational> value_;
};

std::string to_string(const ExtReal& x);

/// "inf" / "infinity" / "∞" or any positive scalar accepted by parse_rational.
ExtReal parse_ext_real(std::string_view text);

ExtReal conjugate(const ExtReal& q);
ExtReal q_nabla(const ExtReal& q);

/// t * (r/t)'. Infinite exactly when r <= t for finite t; t = inf gives r'.
ExtReal composite_exponent(const ExtReal& t, const ExtReal& r);

struct EmbeddingParams {
  ExtReal p{2};
  ExtReal q{2};
  ExtReal r{2};
  QuadSurd alpha{0};
  unsigned n{0};
};

/// alpha + 1/q - 1/p.
QuadSurd n_star(const EmbeddingParams& params);

/// Position of the integer n relative to the threshold T = iso_degree * n_star.
enum class ThresholdOrder { Below, Equal, Above, Boundary };

std::string_view to_string(ThresholdOrder order);

struct DerivedExponents {
  ExtReal q_conj{2};
  ExtReal q_nabla{2};
  QuadSurd n_star{0};
  double iso_degree{1.0};
  std::optional<Rational> iso_degree_exact;
  double threshold{0.0};
  std::optional<QuadSurd> threshold_exact;

  /// Compares n with the threshold; exact whenever threshold_exact is known,
  /// otherwise Boundary inside the absolute tolerance band.
  ThresholdOrder order_of(unsigned n, double tol) const;

  /// Whether the threshold is (or, numerically, could be) a nonnegative integer.
  bool threshold_maybe_natural(double tol) const;
};

DerivedExponents derive_exponents(const EmbeddingParams& params, double iso_degree,
                                  const std::optional<Rational>& iso_degree_exact);

}  // namespace besov
