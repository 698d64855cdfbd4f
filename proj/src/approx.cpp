#include "fal/approx.hpp"

#include <stdexcept>

#include "fal/error.hpp"

namespace fal {

namespace {

SymbolicValue modified_density(const BaseLink& link) {
  return link.volume.value() / Rational(link.modified_augmentations());
}

// Exact ratio a/b when a is a rational multiple of b.
std::optional<Rational> proportional(const SymbolicValue& a, const SymbolicValue& b) {
  std::optional<Rational> t;
  if (b.oct() != 0) {
    t = a.oct() / b.oct();
  } else if (b.tet() != 0) {
    t = a.tet() / b.tet();
  } else if (b.rem() != 0) {
    t = a.rem() / b.rem();
  }
  if (t && a == b * *t) return t;
  return std::nullopt;
}

SymbolicValue absolute(const SymbolicValue& v, const PrecisionContext& ctx) {
  return sign_of(v, ctx).sign < 0 ? -v : v;
}

Composition pair_composition(const BaseLink& l1, const Integer& k, const BaseLink& l2, const Integer& l) {
  std::vector<Composition::Part> parts;
  if (k > 0) parts.push_back({l1, k});
  if (l > 0) parts.push_back({l2, l});
  return Composition(parts);
}

struct PairApproximation {
  Integer k;
  Integer l;
  Composition composition;
};

// First candidate among 1/0, 0/1 and the convergents of r whose modified
// density is within eps of target.
PairApproximation approximate_pair(const SymbolicValue& target, const BaseLink& l1, const BaseLink& l2,
                                   const Rational& eps, const PrecisionContext& ctx, const ApproxOptions& options) {
  if (eps <= 0) throw DomainError("eps must be positive, got " + eps.get_str());
  if (options.max_denominator < 1) throw DomainError("max_denominator must be >= 1");
  const auto v1 = modified_density(l1);
  const auto v2 = modified_density(l2);
  const auto tolerance = SymbolicValue::of_rational(eps);

  auto accepts = [&](const Integer& k, const Integer& l) -> std::optional<PairApproximation> {
    auto c = pair_composition(l1, k, l2, l);
    const auto achieved = vd_mod(c, ctx).exact();
    if (compare(absolute(achieved - target, ctx), tolerance, ctx).sign < 0) {
      return PairApproximation{k, l, std::move(c)};
    }
    return std::nullopt;
  };

  if (v1 == v2) {
    if (compare(target, v1, ctx).sign != 0) {
      throw DomainError("target " + target.to_string() + " differs from the common modified density " +
                        v1.to_string() + " of both links");
    }
    return {1, 0, pair_composition(l1, 1, l2, 0)};
  }

  const auto alpha = alpha_for_target(target, v1, v2, ctx);
  if (alpha.exact && *alpha.exact == 1) return {1, 0, pair_composition(l1, 1, l2, 0)};
  if (alpha.exact && *alpha.exact == 0) return {0, 1, pair_composition(l1, 0, l2, 1)};

  if (auto hit = accepts(1, 0)) return *hit;
  if (alpha.value.sign() <= 0 || alpha.value >= BigDecimal(1, ctx.working_bits())) {
    if (auto hit = accepts(0, 1)) return *hit;
    throw CapExceededError("target " + target.to_string() + " is numerically indistinguishable from an endpoint "
                           "but no single-link recipe is within eps");
  }

  const auto ratio = target_ratio(alpha, l1.modified_augmentations(), l2.modified_augmentations(), ctx);
  const auto convergents = ratio.exact ? best_rational_approximations(*ratio.exact, options.max_denominator)
                                       : best_rational_approximations(ratio.value, options.max_denominator);
  for (const auto& c : convergents) {
    if (c.numerator == 0 && c.denominator == 0) continue;
    if (auto hit = accepts(c.numerator, c.denominator)) return *hit;
  }
  throw CapExceededError("no continued-fraction convergent with denominator <= " + options.max_denominator.get_str() +
                         " reaches the target within eps = " + rational_to_decimal_string(eps));
}

}  // namespace

std::string to_string(DensityMode mode) { return mode == DensityMode::kVd ? "vd" : "vdmod"; }

RatioValue alpha_for_target(const SymbolicValue& d, const SymbolicValue& v1, const SymbolicValue& v2,
                            const PrecisionContext& ctx) {
  const auto span = v1 - v2;
  if (span.is_zero() || sign_of(span, ctx).near_zero) {
    throw DomainError("degenerate pair: both links have modified density " + v1.evaluate(ctx).to_string(ctx.digits()));
  }
  const int s1 = compare(d, v1, ctx).sign;
  const int s2 = compare(d, v2, ctx).sign;
  if (s1 * s2 > 0) {
    throw DomainError("target " + d.evaluate(ctx).to_string(ctx.digits()) + " lies outside [" +
                      v1.evaluate(ctx).to_string(ctx.digits()) + ", " + v2.evaluate(ctx).to_string(ctx.digits()) +
                      "]");
  }
  const auto offset = d - v2;
  if (s2 == 0 && offset.is_zero()) return {Rational(0), BigDecimal(0, ctx.working_bits())};
  if (auto exact = proportional(offset, span)) return {*exact, BigDecimal(*exact, ctx.working_bits())};
  auto value = offset.evaluate(ctx) / span.evaluate(ctx);
  if (value.sign() < 0) value = BigDecimal(0, ctx.working_bits());
  if (value > BigDecimal(1, ctx.working_bits())) value = BigDecimal(1, ctx.working_bits());
  return {std::nullopt, std::move(value)};
}

RatioValue target_ratio(const RatioValue& alpha, const Integer& atilde1, const Integer& atilde2,
                        const PrecisionContext& ctx) {
  if (atilde1 < 1 || atilde2 < 1) throw DomainError("modified augmentation counts must be >= 1");
  if (alpha.exact) {
    const auto& a = *alpha.exact;
    if (a <= 0 || a >= 1) {
      throw DomainError("alpha = " + a.get_str() + " is an endpoint; use a single-link self-sum instead");
    }
    Rational r = Rational(atilde2) * a / (Rational(atilde1) * (1 - a));
    r.canonicalize();
    return {r, BigDecimal(r, ctx.working_bits())};
  }
  const auto bits = ctx.working_bits();
  const BigDecimal one(1, bits);
  if (alpha.value.sign() <= 0 || alpha.value >= one) {
    throw DomainError("alpha = " + alpha.value.to_string(ctx.digits()) +
                      " is an endpoint; use a single-link self-sum instead");
  }
  auto r = BigDecimal(atilde2, bits) * alpha.value / (BigDecimal(atilde1, bits) * (one - alpha.value));
  return {std::nullopt, std::move(r)};
}

std::vector<Convergent> best_rational_approximations(const Rational& r, const Integer& max_denominator) {
  if (r <= 0) throw DomainError("best_rational_approximations needs r > 0, got " + r.get_str());
  if (max_denominator < 1) throw DomainError("max_denominator must be >= 1");
  std::vector<Convergent> out;
  Integer p_prev = 1, q_prev = 0;  // p_{n-1}, q_{n-1}
  Integer p_prev2 = 0, q_prev2 = 1;  // p_{n-2}, q_{n-2}
  Rational x = r;
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    const Integer p = a * p_prev + p_prev2;
    const Integer q = a * q_prev + q_prev2;
    if (q > max_denominator) break;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const Rational fraction = x - Rational(a);
    if (fraction == 0) break;
    x = 1 / fraction;
  }
  if (out.size() >= 2 && out[0].denominator == out[1].denominator) out.erase(out.begin());
  return out;
}

std::vector<Convergent> best_rational_approximations(const BigDecimal& r, const Integer& max_denominator) {
  return best_rational_approximations(r.to_rational(), max_denominator);
}

Recipe approximate_vd_mod(const SymbolicValue& target, const BaseLink& l1, const BaseLink& l2, const Rational& eps,
                          const PrecisionContext& ctx, const ApproxOptions& options) {
  auto pair = approximate_pair(target, l1, l2, eps, ctx, options);
  auto mod = vd_mod(pair.composition, ctx);
  auto plain = vd(pair.composition, ctx);
  auto error = absolute(mod.exact() - target, ctx).evaluate(ctx);
  return Recipe{DensityMode::kVdMod, pair.k, pair.l, 1, target, std::move(pair.composition),
                std::move(mod), std::move(plain), std::move(error)};
}

Recipe approximate_vd(const SymbolicValue& target, const BaseLink& l1, const BaseLink& l2, const Rational& eps,
                      const PrecisionContext& ctx, const ApproxOptions& options) {
  const Rational half_eps = eps / 2;
  auto pair = approximate_pair(target, l1, l2, half_eps, ctx, options);
  const auto base_density = vd_mod(pair.composition, ctx);
  const auto atilde = modified_augmentations(pair.composition);
  const auto half = SymbolicValue::of_rational(half_eps);

  // Least m with vd~ / (m ã + 1) < eps/2.
  auto small_enough = [&](const Integer& m) {
    return compare(base_density.exact() / Rational(m * atilde + 1), half, ctx).sign < 0;
  };
  const auto bits = ctx.working_bits();
  const auto estimate = (BigDecimal(2, bits) * base_density.evaluated / BigDecimal(eps, bits) - BigDecimal(1, bits)) /
                        BigDecimal(atilde, bits);
  Integer m = estimate.floor() + 1;
  if (m < 1) m = 1;
  while (m > 1 && small_enough(m - 1)) --m;
  while (!small_enough(m)) ++m;

  auto composition = replicate(pair.composition, m);
  auto mod = vd_mod(composition, ctx);
  auto plain = vd(composition, ctx);
  const auto gap = absolute(plain.exact() - target, ctx);
  if (compare(gap, SymbolicValue::of_rational(eps), ctx).sign >= 0) {
    throw std::logic_error("replicated recipe " + composition.to_recipe_string() + " misses the target");
  }
  return Recipe{DensityMode::kVd, pair.k, pair.l, m, target, std::move(composition),
                std::move(mod), std::move(plain), gap.evaluate(ctx)};
}

}  // namespace fal
