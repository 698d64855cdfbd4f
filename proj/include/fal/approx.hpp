#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fal/calculus.hpp"
#include "fal/catalog.hpp"
#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace fal {

// A real number known exactly when rational, and always to working precision.
struct RatioValue {
  std::optional<Rational> exact;
  BigDecimal value;
};

// p/q in lowest terms. q = 0 stands for the approximant 1/0 (+infinity).
struct Convergent {
  Integer numerator;
  Integer denominator;

  friend bool operator==(const Convergent&, const Convergent&) = default;
};

enum class DensityMode { kVd, kVdMod };

std::string to_string(DensityMode mode);

// Belted sum of k copies of L1 and l copies of L2, replicated m times, with
// the densities it achieves. At an endpoint one of k, l may be zero.
struct Recipe {
  DensityMode mode;
  Integer k;
  Integer l;
  Integer m;
  SymbolicValue target;
  Composition composition;  // m·k copies of L1 and m·l copies of L2
  DensityValue achieved_vd_mod;
  DensityValue achieved_vd;
  BigDecimal error;  // |achieved - target| in the recipe's mode

  std::string recipe_string() const { return composition.to_recipe_string(); }
};

struct ApproxOptions {
  // Largest l tried among the continued-fraction convergents.
  Integer max_denominator{1'000'000'000};
};

// α = (d - v2) / (v1 - v2), so that d = α v1 + (1 - α) v2.
// Throws DomainError if v1 = v2 or d lies outside [min, max].
RatioValue alpha_for_target(const SymbolicValue& d, const SymbolicValue& v1, const SymbolicValue& v2,
                            const PrecisionContext& ctx);

// r = ã2 α / (ã1 (1 - α)), so that k/l -> r gives k ã1 / (l ã2) -> α / (1 - α).
// Throws DomainError unless 0 < α < 1.
RatioValue target_ratio(const RatioValue& alpha, const Integer& atilde1, const Integer& atilde2,
                        const PrecisionContext& ctx);

// Continued-fraction convergents of r > 0 with denominator <= max_denominator,
// strictly increasing in denominator. A leading a0/1 is dropped when the next
// convergent also has denominator 1 (it is then strictly closer).
std::vector<Convergent> best_rational_approximations(const Rational& r, const Integer& max_denominator);
// Uses the exact binary value of `r`.
std::vector<Convergent> best_rational_approximations(const BigDecimal& r, const Integer& max_denominator);

// Recipe (k, l, m = 1) whose modified density is within eps of target.
// Throws DomainError (eps <= 0, target out of range) or CapExceededError.
Recipe approximate_vd_mod(const SymbolicValue& target, const BaseLink& l1, const BaseLink& l2, const Rational& eps,
                          const PrecisionContext& ctx, const ApproxOptions& options = {});

// Recipe (k, l, m) whose (unmodified) density is within eps of target:
// (k, l) approximates vd~ within eps/2, then m is the least replication
// count with vd~ / (m ã + 1) < eps/2.
Recipe approximate_vd(const SymbolicValue& target, const BaseLink& l1, const BaseLink& l2, const Rational& eps,
                      const PrecisionContext& ctx, const ApproxOptions& options = {});

}  // namespace fal
