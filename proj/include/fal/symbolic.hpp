#pragma once

#include <string>
#include <string_view>

#include "fal/numerics.hpp"

namespace fal {

// Exact real number of the form  oct·v_oct + tet·v_tet + rem  with rational
// coefficients. Volumes, densities, thresholds and targets all live here, so
// identities between them can be checked with zero tolerance.
class SymbolicValue {
 public:
  SymbolicValue() = default;
  SymbolicValue(Rational oct, Rational tet, Rational rem);

  static SymbolicValue of_oct(const Rational& c) { return {c, 0, 0}; }
  static SymbolicValue of_tet(const Rational& c) { return {0, c, 0}; }
  static SymbolicValue of_rational(const Rational& c) { return {0, 0, c}; }

  // Parses a sum of terms such as "3/2*voct", "10*vtet - 1e-6", "9.0",
  // "2/1*voct+0*vtet+0". Coefficients are integers, p/q, or decimals.
  static SymbolicValue parse(std::string_view text);

  const Rational& oct() const { return oct_; }
  const Rational& tet() const { return tet_; }
  const Rational& rem() const { return rem_; }

  bool is_zero() const { return oct_ == 0 && tet_ == 0 && rem_ == 0; }

  BigDecimal evaluate(const PrecisionContext& ctx) const;

  // Canonical "p/q*voct+r/s*vtet+t/u" text; parse() inverts it.
  std::string to_string() const;

  SymbolicValue operator-() const { return {-oct_, -tet_, -rem_}; }
  SymbolicValue& operator+=(const SymbolicValue& rhs);
  SymbolicValue& operator-=(const SymbolicValue& rhs);
  SymbolicValue& operator*=(const Rational& factor);
  SymbolicValue& operator/=(const Rational& divisor);
  friend SymbolicValue operator+(SymbolicValue a, const SymbolicValue& b) { return a += b; }
  friend SymbolicValue operator-(SymbolicValue a, const SymbolicValue& b) { return a -= b; }
  friend SymbolicValue operator*(SymbolicValue a, const Rational& f) { return a *= f; }
  friend SymbolicValue operator*(const Rational& f, SymbolicValue a) { return a *= f; }
  friend SymbolicValue operator/(SymbolicValue a, const Rational& d) { return a /= d; }

  friend bool operator==(const SymbolicValue& a, const SymbolicValue& b) {
    return a.oct_ == b.oct_ && a.tet_ == b.tet_ && a.rem_ == b.rem_;
  }

 private:
  Rational oct_{0};
  Rational tet_{0};
  Rational rem_{0};
};

// Outcome of deciding the sign of a SymbolicValue.
struct SignResult {
  int sign = 0;
  // The sign was decided symbolically (value identically zero, or a single
  // nonzero coefficient over a positive basis element).
  bool exact = false;
  // |value| fell below the context tolerance even after raising precision;
  // `sign` then reports 0 unless the numeric value is strictly nonzero.
  bool near_zero = false;
};

// Sign of `value`, exact where the coefficients decide it, numeric otherwise.
// Near-ties are re-evaluated at 2x and 4x the digits before giving up.
SignResult sign_of(const SymbolicValue& value, const PrecisionContext& ctx);

// Three-way comparison of a and b via sign_of(a - b).
SignResult compare(const SymbolicValue& a, const SymbolicValue& b, const PrecisionContext& ctx);

// Evaluated number together with its exact form.
struct ExactDecimal {
  SymbolicValue exact;
  BigDecimal decimal;
};

}  // namespace fal
