#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fal/catalog.hpp"
#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace fal {

// An iterated belted sum, kept as a multiset of base links.
//
// Volumes add and modified augmentation counts (a - 1) add under belted sum,
// independently of the circles cut, so the multiset determines every value
// this library computes.
class Composition {
 public:
  struct Part {
    BaseLink link;
    Integer multiplicity;
  };

  // Throws DomainError if `parts` is empty, a multiplicity is not positive,
  // or two parts share a name with different link data.
  explicit Composition(const std::vector<Part>& parts);

  static Composition of(const BaseLink& link, const Integer& multiplicity = 1);

  const std::map<std::string, Part, std::less<>>& parts() const { return parts_; }
  Integer multiplicity(std::string_view name) const;

  // "name*k,name*k" in name order; parse_recipe() inverts it.
  std::string to_recipe_string() const;

  friend bool operator==(const Composition& a, const Composition& b);
  friend Composition belted_sum(const Composition& x, const Composition& y);

 private:
  Composition() = default;
  void insert(const BaseLink& link, const Integer& multiplicity);

  std::map<std::string, Part, std::less<>> parts_;
};

// Parses "L41*2,S*3" (multiplicity defaults to 1) against a catalog.
// Throws ParseError for bad syntax and DomainError for unknown names.
Composition parse_recipe(std::string_view text, const Catalog& catalog);

// Multiset union.
Composition belted_sum(const Composition& x, const Composition& y);

// L^{(k)}: k copies of `link`. Throws DomainError for k < 1.
Composition self_sum(const BaseLink& link, const Integer& k);

// c^{(m)}: every multiplicity times m. Throws DomainError for m < 1.
Composition replicate(const Composition& c, const Integer& m);

ExactVolume volume(const Composition& c);
// a(c) = ã(c) + 1.
Integer augmentations(const Composition& c);
// ã(c) = Σ k_i (a_i - 1).
Integer modified_augmentations(const Composition& c);

// A density numerator/denominator with its decimal value.
struct DensityValue {
  ExactVolume numerator;
  Integer denominator;
  BigDecimal evaluated;

  SymbolicValue exact() const { return numerator.value() / Rational(denominator); }
};

// vol / a
DensityValue vd(const Composition& c, const PrecisionContext& ctx);
// vol / ã
DensityValue vd_mod(const Composition& c, const PrecisionContext& ctx);

// The modified density as a weighted average of the parts' modified
// densities, Σ k_i ã_i vd~_i / Σ k_i ã_i. `exact` is computed symbolically;
// `decimal` from the evaluated per-part densities in floating arithmetic.
ExactDecimal vd_mod_weighted_average(const Composition& c, const PrecisionContext& ctx);

// vd~(c) / (m ã(c) + 1) = vd~(c^{(m)}) - vd(c^{(m)}).
SymbolicValue replication_error_exact(const Composition& c, const Integer& m);
BigDecimal replication_error(const Composition& c, const Integer& m, const PrecisionContext& ctx);

}  // namespace fal
