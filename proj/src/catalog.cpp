#include "fal/catalog.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fal/error.hpp"

namespace fal {

namespace {

using nlohmann::json;

bool is_terminating_decimal(const Rational& value) {
  Integer den = value.get_den();
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5;
  return den == 1;
}

std::string rational_field(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string string_field(const json& object, const char* key, const std::string& fallback, std::string_view link) {
  const auto it = object.find(key);
  if (it == object.end()) return fallback;
  if (!it->is_string()) {
    throw ParseError("link '" + std::string(link) + "': field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

Rational coefficient_field(const json& object, const char* key, std::string_view link) {
  const auto text = string_field(object, key, "0", link);
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError("link '" + std::string(link) + "': field '" + key + "': " + e.what());
  }
}

Rational remainder_field(const json& object, std::string_view link) {
  const auto text = string_field(object, "remainder", "0", link);
  if (text.find('/') != std::string::npos) {
    throw ParseError("link '" + std::string(link) + "': remainder must be a decimal string, got '" + text + "'");
  }
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError("link '" + std::string(link) + "': field 'remainder': " + e.what());
  }
}

BaseLink link_from_json(const json& object) {
  if (!object.is_object()) throw ParseError("each entry of \"links\" must be an object");
  const auto name_it = object.find("name");
  if (name_it == object.end() || !name_it->is_string()) throw ParseError("link entry without a string \"name\"");
  const auto name = name_it->get<std::string>();
  const auto a_it = object.find("a");
  if (a_it == object.end() || !a_it->is_number_integer()) {
    throw ParseError("link '" + name + "': field 'a' must be an integer");
  }
  const auto a = a_it->get<long long>();
  if (a > std::numeric_limits<int>::max()) throw DomainError("link '" + name + "': augmentation count too large");
  if (a < std::numeric_limits<int>::min()) throw DomainError("link '" + name + "': augmentation count too small");
  ExactVolume volume(coefficient_field(object, "c_oct", name), coefficient_field(object, "c_tet", name),
                     remainder_field(object, name));
  return BaseLink(name, std::move(volume), static_cast<int>(a), string_field(object, "note", "", name));
}

std::string describe(const SymbolicValue& v, const PrecisionContext& ctx) {
  return v.evaluate(ctx).to_string(12) + " (" + v.to_string() + ")";
}

}  // namespace

ExactVolume::ExactVolume(Rational c_oct, Rational c_tet, Rational remainder)
    : value_(std::move(c_oct), std::move(c_tet), std::move(remainder)) {
  if (value_.oct() < 0 || value_.tet() < 0 || value_.rem() < 0) {
    throw DomainError("volume coefficients must be nonnegative: " + value_.to_string());
  }
  if (!is_terminating_decimal(value_.rem())) {
    throw DomainError("volume remainder must be a terminating decimal: " + value_.rem().get_str());
  }
  if (value_.is_zero()) throw DomainError("volume must be positive");
}

ExactVolume& ExactVolume::operator+=(const ExactVolume& rhs) {
  value_ += rhs.value_;
  return *this;
}

ExactVolume ExactVolume::scaled(const Integer& factor) const {
  if (factor <= 0) throw DomainError("volume scale factor must be positive");
  const auto v = value_ * Rational(factor);
  return {v.oct(), v.tet(), v.rem()};
}

bool is_valid_link_name(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!std::isalpha(first) && name.front() != '_') return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '.' && c != '-') return false;
  }
  return true;
}

BaseLink::BaseLink(std::string name_, ExactVolume volume_, int augmentations_, std::string note_)
    : name(std::move(name_)), volume(std::move(volume_)), augmentations(augmentations_), note(std::move(note_)) {
  if (!is_valid_link_name(name)) throw DomainError("invalid link name '" + name + "'");
  if (augmentations < kMinAugmentations) {
    throw DomainError("link '" + name + "': augmentation count " + std::to_string(augmentations) +
                      " is below the minimum of " + std::to_string(kMinAugmentations));
  }
}

BaseLink figure_eight() {
  return BaseLink(std::string(kFigureEightName), ExactVolume::of_oct(2), 2,
                  "fully augmented figure-eight knot; vd = v_oct, vd~ = 2 v_oct");
}

Catalog Catalog::builtin() {
  Catalog catalog;
  catalog.add(figure_eight());
  return catalog;
}

void Catalog::add(BaseLink link) {
  if (contains(link.name)) throw ParseError("duplicate link name '" + link.name + "'");
  auto name = link.name;
  entries_.emplace(std::move(name), std::move(link));
}

void Catalog::put(BaseLink link) {
  auto name = link.name;
  entries_.insert_or_assign(std::move(name), std::move(link));
}

const BaseLink& Catalog::at(std::string_view name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) throw DomainError("unknown link '" + std::string(name) + "'");
  return it->second;
}

bool Catalog::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, link] : entries_) out.push_back(name);
  return out;
}

Catalog load_catalog(std::string_view source) {
  json document;
  try {
    document = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!document.is_object()) throw ParseError("catalog must be a JSON object");
  const auto links = document.find("links");
  if (links == document.end() || !links->is_array()) throw ParseError("catalog needs a \"links\" array");
  Catalog catalog;
  for (const auto& entry : *links) catalog.add(link_from_json(entry));
  if (!catalog.contains(kFigureEightName)) catalog.add(figure_eight());
  return catalog;
}

Catalog load_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read catalog file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_catalog(buffer.str());
}

std::string save_catalog(const Catalog& catalog) {
  json links = json::array();
  for (const auto& [name, link] : catalog.entries()) {
    links.push_back({{"name", link.name},
                     {"c_oct", rational_field(link.volume.c_oct())},
                     {"c_tet", rational_field(link.volume.c_tet())},
                     {"remainder", rational_to_decimal_string(link.volume.remainder())},
                     {"a", link.augmentations},
                     {"note", link.note}});
  }
  return json{{"links", links}}.dump(2) + "\n";
}

std::vector<Diagnostic> validate_entry(const BaseLink& link, const PrecisionContext& ctx) {
  std::vector<Diagnostic> out;
  const auto& volume = link.volume.value();
  const auto density = volume / Rational(link.augmentations);
  const auto lower = SymbolicValue::of_oct(1);
  const auto upper = SymbolicValue::of_tet(10);
  if (compare(density, lower, ctx).sign < 0) {
    out.push_back({Severity::kWarning, "below-spectrum",
                   "vd = " + describe(density, ctx) + " is below v_oct; the spectrum starts at v_oct"});
  }
  if (compare(density, upper, ctx).sign >= 0) {
    out.push_back({Severity::kWarning, "above-spectrum",
                   "vd = " + describe(density, ctx) + " is at or above 10 v_tet, which no FAL attains"});
  }
  const auto miyamoto = SymbolicValue::of_oct(2 * (link.augmentations - 1));
  if (compare(volume, miyamoto, ctx).sign < 0) {
    out.push_back({Severity::kWarning, "miyamoto-bound",
                   "vol = " + describe(volume, ctx) + " is below 2(a-1) v_oct = " + describe(miyamoto, ctx)});
  }
  return out;
}

}  // namespace fal
