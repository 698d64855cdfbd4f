#include "fal/symbolic.hpp"

#include <cctype>
#include <vector>

#include "fal/error.hpp"

namespace fal {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

enum class Basis { kOct, kTet, kOne };

Basis basis_of(std::string_view name, std::string_view whole) {
  if (name == "voct" || name == "v_oct") return Basis::kOct;
  if (name == "vtet" || name == "v_tet") return Basis::kTet;
  throw ParseError("unknown constant '" + std::string(name) + "' in '" + std::string(whole) + "'");
}

bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }

// Splits on top-level '+'/'-' that start a new term; a sign right after an
// exponent marker ('e'/'E' following a digit or '.') belongs to the number.
std::vector<std::string_view> split_terms(std::string_view text) {
  std::vector<std::string_view> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] != '+' && text[i] != '-') continue;
    std::size_t j = i;
    while (j > 0 && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    if (j > 0 && (text[j - 1] == 'e' || text[j - 1] == 'E') && j >= 2 &&
        (std::isdigit(static_cast<unsigned char>(text[j - 2])) || text[j - 2] == '.')) {
      continue;
    }
    if (j == 0 || text[j - 1] == '*' || text[j - 1] == '+' || text[j - 1] == '-') continue;
    terms.push_back(text.substr(start, i - start));
    start = i;
  }
  terms.push_back(text.substr(start));
  return terms;
}

}  // namespace

SymbolicValue::SymbolicValue(Rational oct, Rational tet, Rational rem)
    : oct_(std::move(oct)), tet_(std::move(tet)), rem_(std::move(rem)) {
  oct_.canonicalize();
  tet_.canonicalize();
  rem_.canonicalize();
}

SymbolicValue SymbolicValue::parse(std::string_view text) {
  const auto whole = strip(text);
  if (whole.empty()) throw ParseError("empty value");
  SymbolicValue out;
  for (auto term : split_terms(whole)) {
    term = strip(term);
    Rational sign = 1;
    while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      if (term.front() == '-') sign = -sign;
      term = strip(term.substr(1));
    }
    if (term.empty()) throw ParseError("dangling sign in '" + std::string(whole) + "'");
    Rational coefficient = 1;
    Basis basis = Basis::kOne;
    const auto star = term.find('*');
    if (star != std::string_view::npos) {
      coefficient = parse_rational(strip(term.substr(0, star)));
      basis = basis_of(strip(term.substr(star + 1)), whole);
    } else if (is_identifier_start(term.front())) {
      basis = basis_of(term, whole);
    } else {
      coefficient = parse_rational(term);
    }
    coefficient *= sign;
    switch (basis) {
      case Basis::kOct: out.oct_ += coefficient; break;
      case Basis::kTet: out.tet_ += coefficient; break;
      case Basis::kOne: out.rem_ += coefficient; break;
    }
  }
  return out;
}

BigDecimal SymbolicValue::evaluate(const PrecisionContext& ctx) const {
  const auto bits = ctx.working_bits();
  BigDecimal total(rem_, bits);
  if (oct_ != 0) total += BigDecimal(oct_, bits) * v_oct(ctx);
  if (tet_ != 0) total += BigDecimal(tet_, bits) * v_tet(ctx);
  return total;
}

std::string SymbolicValue::to_string() const {
  auto term = [](const Rational& c) {
    std::string s = c.get_num().get_str();
    if (c.get_den() != 1) s += "/" + c.get_den().get_str();
    return s;
  };
  std::string out = term(oct_) + "*voct";
  const auto tet = term(tet_);
  out += (tet.front() == '-' ? "" : "+") + tet + "*vtet";
  const auto rem = term(rem_);
  out += (rem.front() == '-' ? "" : "+") + rem;
  return out;
}

SymbolicValue& SymbolicValue::operator+=(const SymbolicValue& rhs) {
  oct_ += rhs.oct_;
  tet_ += rhs.tet_;
  rem_ += rhs.rem_;
  return *this;
}

SymbolicValue& SymbolicValue::operator-=(const SymbolicValue& rhs) {
  oct_ -= rhs.oct_;
  tet_ -= rhs.tet_;
  rem_ -= rhs.rem_;
  return *this;
}

SymbolicValue& SymbolicValue::operator*=(const Rational& factor) {
  oct_ *= factor;
  tet_ *= factor;
  rem_ *= factor;
  return *this;
}

SymbolicValue& SymbolicValue::operator/=(const Rational& divisor) {
  if (divisor == 0) throw DomainError("division of a symbolic value by zero");
  oct_ /= divisor;
  tet_ /= divisor;
  rem_ /= divisor;
  return *this;
}

SignResult sign_of(const SymbolicValue& value, const PrecisionContext& ctx) {
  if (value.is_zero()) return {0, true, false};
  // All basis elements are positive, so agreeing coefficient signs decide it.
  const int s_oct = sgn(value.oct());
  const int s_tet = sgn(value.tet());
  const int s_rem = sgn(value.rem());
  if (s_oct >= 0 && s_tet >= 0 && s_rem >= 0) return {1, true, false};
  if (s_oct <= 0 && s_tet <= 0 && s_rem <= 0) return {-1, true, false};
  for (int factor : {1, 2, 4}) {
    const auto scaled = ctx.scaled(factor);
    const auto evaluated = value.evaluate(scaled);
    if (!within_tolerance(evaluated, BigDecimal(0, scaled.working_bits()), scaled)) {
      return {evaluated.sign(), false, false};
    }
  }
  const auto evaluated = value.evaluate(ctx.scaled(4));
  return {evaluated.sign(), false, true};
}

SignResult compare(const SymbolicValue& a, const SymbolicValue& b, const PrecisionContext& ctx) {
  return sign_of(a - b, ctx);
}

}  // namespace fal
