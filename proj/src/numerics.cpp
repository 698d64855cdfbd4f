#include "fal/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "fal/error.hpp"

namespace fal {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

struct DecimalParts {
  bool negative = false;
  std::string digits;  // integer and fractional digits concatenated
  long exponent = 0;   // value = digits * 10^exponent
};

// Accepts [+-]?(d+(.d*)?|.d+)([eE][+-]?d+)?
bool split_decimal(std::string_view text, DecimalParts& out) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    out.negative = text[i] == '-';
    ++i;
  }
  std::size_t int_digits = 0;
  while (i < text.size() && is_digit(text[i])) {
    out.digits.push_back(text[i++]);
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      out.digits.push_back(text[i++]);
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) return false;
  long exp = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    std::size_t exp_digits = 0;
    while (i < text.size() && is_digit(text[i])) {
      if (exp > 1'000'000) return false;
      exp = exp * 10 + (text[i++] - '0');
      ++exp_digits;
    }
    if (exp_digits == 0) return false;
    if (exp_negative) exp = -exp;
  }
  if (i != text.size()) return false;
  out.exponent = exp - static_cast<long>(frac_digits);
  return true;
}

// Tangent numbers T_1..T_n (1, 2, 16, 272, ...), integer-only recurrence.
std::vector<Integer> tangent_numbers(int n) {
  std::vector<Integer> t(static_cast<std::size_t>(n) + 1);
  if (n < 1) return t;
  t[1] = 1;
  for (int k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= n; ++k) {
    for (int j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  return t;
}

class ClausenCoefficientTable {
 public:
  Rational get(int k) {
    std::lock_guard lock(mutex_);
    if (static_cast<int>(coefficients_.size()) <= k) grow(std::max(2 * k, 64));
    return coefficients_[static_cast<std::size_t>(k)];
  }

  Rational bernoulli(int k) {
    std::lock_guard lock(mutex_);
    if (static_cast<int>(bernoulli_.size()) <= k) grow(std::max(2 * k, 64));
    return bernoulli_[static_cast<std::size_t>(k)];
  }

 private:
  void grow(int n) {
    const auto tangent = tangent_numbers(n);
    coefficients_.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    bernoulli_.assign(static_cast<std::size_t>(n) + 1, Rational(0));
    Integer factorial = 1;  // (2k+1)!
    for (int k = 1; k <= n; ++k) {
      factorial *= (2 * k) * (2 * k + 1);
      Integer four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
      // |B_2k| = 2k T_k / (4^k (4^k - 1))
      Rational magnitude(2 * k * tangent[k], four_k * (four_k - 1));
      magnitude.canonicalize();
      bernoulli_[k] = (k % 2 == 1) ? magnitude : Rational(-magnitude);
      Rational coefficient(tangent[k], four_k * (four_k - 1) * factorial);
      coefficient.canonicalize();
      coefficients_[k] = coefficient;
    }
  }

  std::mutex mutex_;
  std::vector<Rational> coefficients_;
  std::vector<Rational> bernoulli_;
};

ClausenCoefficientTable& coefficient_table() {
  static ClausenCoefficientTable table;
  return table;
}

// log10 of an upper bound on Σ_{k>K} |B_2k| x^{2k+1} / (2k (2k+1)!) for 0 < x <= π.
// Uses |B_2k| = 2 (2k)! ζ(2k) / (2π)^{2k} and ζ(2k) <= π²/6.
double clausen_tail_log10(double x, int K) {
  const double rho = (x / (2.0 * M_PI)) * (x / (2.0 * M_PI));
  const double zeta2 = M_PI * M_PI / 6.0;
  return std::log10(zeta2 * x / ((K + 1.0) * (2.0 * K + 3.0)) / (1.0 - rho)) + (K + 1.0) * std::log10(rho);
}

struct ConstantPair {
  BigDecimal oct;
  BigDecimal tet;
};

ConstantPair compute_constants(const PrecisionContext& ctx) {
  return {BigDecimal(8, ctx.working_bits()) * lobachevsky_pi_fraction(Rational(1, 4), ctx),
          BigDecimal(2, ctx.working_bits()) * lobachevsky_pi_fraction(Rational(1, 6), ctx)};
}

const ConstantPair& constants(const PrecisionContext& ctx) {
  static std::mutex mutex;
  static std::map<int, ConstantPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(ctx.digits());
  if (it == cache.end()) it = cache.emplace(ctx.digits(), compute_constants(ctx)).first;
  return it->second;
}

}  // namespace

PrecisionContext::PrecisionContext(int digits) : digits_(digits) {
  if (digits < kMinDigits) {
    throw ConfigError("precision of " + std::to_string(digits) + " digits is below the minimum of " +
                      std::to_string(kMinDigits));
  }
  if (digits > kMaxDigits) {
    throw ConfigError("precision of " + std::to_string(digits) + " digits exceeds the maximum of " +
                      std::to_string(kMaxDigits));
  }
}

mpfr_prec_t PrecisionContext::working_bits() const {
  return static_cast<mpfr_prec_t>(std::ceil(working_digits() * kLog2Of10)) + 1;
}

BigDecimal::BigDecimal() : BigDecimal(64) {}

BigDecimal::BigDecimal(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigDecimal::BigDecimal(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigDecimal::BigDecimal(const Rational& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigDecimal::BigDecimal(const Integer& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigDecimal::BigDecimal(const BigDecimal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigDecimal::BigDecimal(BigDecimal&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigDecimal& BigDecimal::operator=(const BigDecimal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigDecimal& BigDecimal::operator=(BigDecimal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigDecimal::~BigDecimal() { mpfr_clear(value_); }

BigDecimal BigDecimal::parse(std::string_view text, mpfr_prec_t bits) {
  const auto trimmed = trim(text);
  DecimalParts parts;
  if (!split_decimal(trimmed, parts)) {
    throw ParseError("not a decimal number: '" + std::string(text) + "'");
  }
  BigDecimal out(bits);
  const std::string buffer(trimmed);
  if (mpfr_set_str(out.value_, buffer.c_str(), 10, MPFR_RNDN) != 0) {
    throw ParseError("not a decimal number: '" + std::string(text) + "'");
  }
  return out;
}

BigDecimal BigDecimal::pi(mpfr_prec_t bits) {
  BigDecimal out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigDecimal BigDecimal::pow10(long exponent, mpfr_prec_t bits) {
  BigDecimal out(bits);
  mpfr_ui_pow_ui(out.value_, 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent), MPFR_RNDN);
  if (exponent < 0) mpfr_ui_div(out.value_, 1, out.value_, MPFR_RNDN);
  return out;
}

BigDecimal BigDecimal::rounded(mpfr_prec_t bits) const {
  BigDecimal out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

BigDecimal BigDecimal::abs() const {
  BigDecimal out(precision());
  mpfr_abs(out.value_, value_, MPFR_RNDN);
  return out;
}

BigDecimal BigDecimal::sin() const {
  BigDecimal out(precision());
  mpfr_sin(out.value_, value_, MPFR_RNDN);
  return out;
}

BigDecimal BigDecimal::log() const {
  BigDecimal out(precision());
  mpfr_log(out.value_, value_, MPFR_RNDN);
  return out;
}

Integer BigDecimal::floor() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

Integer BigDecimal::ceil() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDU);
  return out;
}

Rational BigDecimal::to_rational() const {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

std::string BigDecimal::to_string(int significant) const {
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (is_zero()) return "0";
  significant = std::max(significant, 1);
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string out;
  if (!digits.empty() && digits.front() == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  // value = 0.digits * 10^exp
  if (exp > 0 && exp <= static_cast<mpfr_exp_t>(digits.size())) {
    out += digits.substr(0, static_cast<std::size_t>(exp));
    if (static_cast<std::size_t>(exp) < digits.size()) out += "." + digits.substr(static_cast<std::size_t>(exp));
  } else if (exp <= 0 && exp > -6) {
    out += "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
  } else {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    const long e = static_cast<long>(exp) - 1;
    out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  }
  return out;
}

std::string BigDecimal::to_exact_string() const {
  const int significant = static_cast<int>(std::ceil(static_cast<double>(precision()) / kLog2Of10)) + 2;
  if (is_zero()) return "0";
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string out;
  if (!digits.empty() && digits.front() == '-') {
    out.push_back('-');
    digits.erase(0, 1);
  }
  out += "0." + digits + "e" + std::to_string(static_cast<long>(exp));
  return out;
}

BigDecimal BigDecimal::operator-() const {
  BigDecimal out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

#define FAL_BIGDECIMAL_COMPOUND(op, fn)                              \
  BigDecimal& BigDecimal::operator op(const BigDecimal& rhs) {       \
    if (rhs.precision() > precision()) {                             \
      BigDecimal widened = rounded(rhs.precision());                 \
      mpfr_swap(value_, widened.value_);                             \
    }                                                                \
    fn(value_, value_, rhs.value_, MPFR_RNDN);                       \
    return *this;                                                    \
  }

FAL_BIGDECIMAL_COMPOUND(+=, mpfr_add)
FAL_BIGDECIMAL_COMPOUND(-=, mpfr_sub)
FAL_BIGDECIMAL_COMPOUND(*=, mpfr_mul)
FAL_BIGDECIMAL_COMPOUND(/=, mpfr_div)

#undef FAL_BIGDECIMAL_COMPOUND

std::partial_ordering operator<=>(const BigDecimal& a, const BigDecimal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool within_tolerance(const BigDecimal& a, const BigDecimal& b, const PrecisionContext& ctx) {
  const auto diff = (a - b).abs();
  return diff <= BigDecimal::pow10(ctx.tolerance_exponent(), ctx.working_bits());
}

Rational clausen_coefficient(int k) {
  if (k < 1) throw DomainError("clausen_coefficient: k must be >= 1");
  return coefficient_table().get(k);
}

Rational bernoulli_even(int k) {
  if (k < 1) throw DomainError("bernoulli_even: k must be >= 1");
  return coefficient_table().bernoulli(k);
}

BigDecimal lobachevsky(const BigDecimal& theta, const PrecisionContext& ctx) {
  // Internal precision: working precision plus slack for the summation.
  const mpfr_prec_t bits = ctx.working_bits() + 32;
  const auto half_pi = BigDecimal::pi(bits) / BigDecimal(2, bits);
  const auto slack = BigDecimal::pow10(-ctx.working_digits(), bits);
  if (theta.sign() <= 0 || theta > half_pi + slack) {
    throw DomainError("lobachevsky: angle " + theta.to_string(ctx.digits()) + " is outside (0, pi/2]");
  }
  // Λ(θ) = Cl₂(2θ)/2,  Cl₂(x) = x - x ln x + Σ_k |B_2k| x^{2k+1} / (2k (2k+1)!)
  auto x = theta.rounded(bits) * BigDecimal(2, bits);
  if (x > half_pi * BigDecimal(2, bits)) x = half_pi * BigDecimal(2, bits);
  const auto x_squared = x * x;
  auto sum = x - x * x.log();
  auto power = x;  // x^{2k+1}
  const double x_double = x.to_double();
  const double stop = -static_cast<double>(ctx.working_digits() + 2);
  for (int k = 1;; ++k) {
    power *= x_squared;
    sum += BigDecimal(clausen_coefficient(k), bits) * power;
    if (clausen_tail_log10(x_double, k) - std::log10(2.0) < stop) break;
  }
  return (sum / BigDecimal(2, bits)).rounded(ctx.working_bits());
}

BigDecimal lobachevsky_pi_fraction(const Rational& fraction, const PrecisionContext& ctx) {
  if (fraction == Rational(1, 2)) return BigDecimal(0, ctx.working_bits());
  const mpfr_prec_t bits = ctx.working_bits() + 32;
  return lobachevsky(BigDecimal::pi(bits) * BigDecimal(fraction, bits), ctx);
}

BigDecimal v_oct(const PrecisionContext& ctx) { return constants(ctx).oct; }

BigDecimal v_tet(const PrecisionContext& ctx) { return constants(ctx).tet; }

std::string rational_to_decimal_string(const Rational& value) {
  Integer den = value.get_den();
  long twos = 0;
  long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_str();
  const long scale = std::max(twos, fives);
  Integer ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  Integer scaled = value.get_num() * ten_power / value.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (scale > 0) {
    if (static_cast<long>(digits.size()) <= scale) {
      digits.insert(0, static_cast<std::size_t>(scale - static_cast<long>(digits.size()) + 1), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
  }
  return negative ? "-" + digits : digits;
}

Rational parse_rational(std::string_view text) {
  const auto trimmed = trim(text);
  const auto slash = trimmed.find('/');
  if (slash != std::string_view::npos) {
    const auto num_text = trim(trimmed.substr(0, slash));
    const auto den_text = trim(trimmed.substr(slash + 1));
    auto valid_integer = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
    };
    if (!valid_integer(num_text, true) || !valid_integer(den_text, false)) {
      throw ParseError("not a rational 'p/q': '" + std::string(text) + "'");
    }
    std::string num(num_text);
    if (num.front() == '+') num.erase(0, 1);
    Integer p(num, 10);
    Integer q(std::string(den_text), 10);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational out(p, q);
    out.canonicalize();
    return out;
  }
  DecimalParts parts;
  if (!split_decimal(trimmed, parts)) throw ParseError("not a number: '" + std::string(text) + "'");
  Integer mantissa(parts.digits, 10);
  if (parts.negative) mantissa = -mantissa;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(parts.exponent < 0 ? -parts.exponent : parts.exponent));
  Rational out = parts.exponent < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  out.canonicalize();
  return out;
}

}  // namespace fal
