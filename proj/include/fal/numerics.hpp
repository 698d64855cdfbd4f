#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace fal {

using Integer = mpz_class;
using Rational = mpq_class;

// Working precision shared by every evaluated quantity.
//
// Values are computed with `digits + kGuardDigits` decimal digits and shown
// with `digits`. Comparisons between evaluated quantities that may be equal
// use the tolerance 10^(-digits + kGuardDigits).
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 20;
  static constexpr int kGuardDigits = 5;
  static constexpr int kDefaultDigits = 30;
  static constexpr int kMaxDigits = 100000;

  explicit PrecisionContext(int digits = kDefaultDigits);

  int digits() const { return digits_; }
  int working_digits() const { return digits_ + kGuardDigits; }
  mpfr_prec_t working_bits() const;
  int tolerance_exponent() const { return -digits_ + kGuardDigits; }

  // Context with `factor` times the digits; used to settle near-ties.
  PrecisionContext scaled(int factor) const {
    return PrecisionContext(digits_ * factor < kMaxDigits ? digits_ * factor : kMaxDigits);
  }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
};

// Arbitrary-precision binary float with decimal I/O, backed by MPFR.
//
// The precision (in bits) travels with the value; binary operations round to
// the larger precision of the two operands.
class BigDecimal {
 public:
  BigDecimal();
  explicit BigDecimal(mpfr_prec_t bits);
  BigDecimal(long value, mpfr_prec_t bits);
  BigDecimal(const Rational& value, mpfr_prec_t bits);
  BigDecimal(const Integer& value, mpfr_prec_t bits);
  BigDecimal(const BigDecimal& other);
  BigDecimal(BigDecimal&& other) noexcept;
  BigDecimal& operator=(const BigDecimal& other);
  BigDecimal& operator=(BigDecimal&& other) noexcept;
  ~BigDecimal();

  // Parses a decimal literal ("-12.5e-3"). Throws ParseError.
  static BigDecimal parse(std::string_view text, mpfr_prec_t bits);
  static BigDecimal pi(mpfr_prec_t bits);
  static BigDecimal from(long value, const PrecisionContext& ctx) { return {value, ctx.working_bits()}; }
  static BigDecimal from(const Rational& value, const PrecisionContext& ctx) { return {value, ctx.working_bits()}; }
  static BigDecimal pow10(long exponent, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  // Rounded copy at a different precision.
  BigDecimal rounded(mpfr_prec_t bits) const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  BigDecimal abs() const;
  BigDecimal sin() const;
  BigDecimal log() const;
  Integer floor() const;
  Integer ceil() const;
  // Exact value of the binary float as a rational.
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  // Decimal text with `significant` significant digits; fixed notation for
  // moderate exponents, scientific otherwise.
  std::string to_string(int significant) const;
  // Text that parses back to the identical binary value.
  std::string to_exact_string() const;

  BigDecimal operator-() const;
  BigDecimal& operator+=(const BigDecimal& rhs);
  BigDecimal& operator-=(const BigDecimal& rhs);
  BigDecimal& operator*=(const BigDecimal& rhs);
  BigDecimal& operator/=(const BigDecimal& rhs);
  friend BigDecimal operator+(BigDecimal lhs, const BigDecimal& rhs) { return lhs += rhs; }
  friend BigDecimal operator-(BigDecimal lhs, const BigDecimal& rhs) { return lhs -= rhs; }
  friend BigDecimal operator*(BigDecimal lhs, const BigDecimal& rhs) { return lhs *= rhs; }
  friend BigDecimal operator/(BigDecimal lhs, const BigDecimal& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigDecimal& a, const BigDecimal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigDecimal& a, const BigDecimal& b);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

// True iff |a - b| <= 10^(-digits + guard).
bool within_tolerance(const BigDecimal& a, const BigDecimal& b, const PrecisionContext& ctx);

// Lobachevsky function Λ(θ) = -∫₀^θ ln|2 sin t| dt for 0 < θ <= π/2.
BigDecimal lobachevsky(const BigDecimal& theta, const PrecisionContext& ctx);
// Λ(fraction · π).
BigDecimal lobachevsky_pi_fraction(const Rational& fraction, const PrecisionContext& ctx);

// Volume of the regular ideal octahedron, 8Λ(π/4). Cached per precision.
BigDecimal v_oct(const PrecisionContext& ctx);
// Volume of the regular ideal tetrahedron, 2Λ(π/6). Cached per precision.
BigDecimal v_tet(const PrecisionContext& ctx);

// |B_{2k}| / (2k (2k+1)!), the coefficients of the Clausen series.
Rational clausen_coefficient(int k);
// Bernoulli number B_{2k} for k >= 1.
Rational bernoulli_even(int k);

// Formats a rational as a terminating decimal if possible; "p/q" otherwise.
std::string rational_to_decimal_string(const Rational& value);
// Parses "p/q", an integer, or a finite decimal literal into an exact rational.
Rational parse_rational(std::string_view text);

}  // namespace fal
