#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace fal {

// Volume c_oct·v_oct + c_tet·v_tet + remainder with nonnegative rational
// coefficients and a nonnegative terminating-decimal remainder. The total is
// positive.
class ExactVolume {
 public:
  // Throws DomainError if an invariant is violated.
  ExactVolume(Rational c_oct, Rational c_tet, Rational remainder);

  static ExactVolume of_oct(const Rational& c) { return {c, 0, 0}; }
  static ExactVolume of_tet(const Rational& c) { return {0, c, 0}; }

  const Rational& c_oct() const { return value_.oct(); }
  const Rational& c_tet() const { return value_.tet(); }
  const Rational& remainder() const { return value_.rem(); }
  const SymbolicValue& value() const { return value_; }
  bool has_remainder() const { return value_.rem() != 0; }

  BigDecimal evaluate(const PrecisionContext& ctx) const { return value_.evaluate(ctx); }

  ExactVolume& operator+=(const ExactVolume& rhs);
  friend ExactVolume operator+(ExactVolume a, const ExactVolume& b) { return a += b; }
  // Scales by a positive integer.
  ExactVolume scaled(const Integer& factor) const;

  friend bool operator==(const ExactVolume& a, const ExactVolume& b) { return a.value_ == b.value_; }

 private:
  SymbolicValue value_;
};

// A base fully augmented link: its volume and number of augmentation circles.
struct BaseLink {
  static constexpr int kMinAugmentations = 2;

  // Throws DomainError for a bad name or a < 2.
  BaseLink(std::string name, ExactVolume volume, int augmentations, std::string note = {});

  std::string name;
  ExactVolume volume;
  int augmentations;
  std::string note;

  int modified_augmentations() const { return augmentations - 1; }

  friend bool operator==(const BaseLink&, const BaseLink&) = default;
};

// Name of the built-in fully augmented figure-eight knot.
inline constexpr std::string_view kFigureEightName = "L41";

// Fully augmented figure-eight knot: volume 2·v_oct, two augmentation circles.
BaseLink figure_eight();

bool is_valid_link_name(std::string_view name);

class Catalog {
 public:
  // Catalog holding only the built-in entry.
  static Catalog builtin();

  // Inserts a link; throws ParseError if the name is taken.
  void add(BaseLink link);
  // Inserts or replaces.
  void put(BaseLink link);

  // Throws DomainError naming the missing link.
  const BaseLink& at(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> names() const;
  const std::map<std::string, BaseLink, std::less<>>& entries() const { return entries_; }

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::map<std::string, BaseLink, std::less<>> entries_;
};

// Parses a catalog JSON document:
//   {"links": [{"name": "S", "c_oct": "p/q", "c_tet": "p/q",
//               "remainder": "decimal", "a": 6, "note": "..."}]}
// Missing coefficients default to "0". The built-in figure-eight entry is
// added unless the document defines a link with the same name.
// Throws ParseError (malformed document, duplicate name) or DomainError.
Catalog load_catalog(std::string_view source);
Catalog load_catalog_file(const std::filesystem::path& path);

// Serializes every entry, built-in included, in the load_catalog format.
std::string save_catalog(const Catalog& catalog);

enum class Severity { kWarning, kError };

struct Diagnostic {
  Severity severity;
  std::string code;
  std::string message;
};

// Soft checks against the known density bounds; never modifies `link`.
//   "below-spectrum"   vd < v_oct
//   "above-spectrum"   vd >= 10·v_tet
//   "miyamoto-bound"   vol < 2(a-1)·v_oct
std::vector<Diagnostic> validate_entry(const BaseLink& link, const PrecisionContext& ctx);

}  // namespace fal
