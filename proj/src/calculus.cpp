#include "fal/calculus.hpp"

#include <cctype>

#include "fal/error.hpp"

namespace fal {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_multiplicity(std::string_view text, std::string_view whole) {
  text = strip(text);
  if (text.empty()) throw ParseError("missing multiplicity in recipe '" + std::string(whole) + "'");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ParseError("multiplicity '" + std::string(text) + "' is not a positive integer in recipe '" +
                       std::string(whole) + "'");
    }
  }
  Integer k(std::string(text), 10);
  if (k == 0) throw ParseError("multiplicity 0 in recipe '" + std::string(whole) + "'");
  return k;
}

}  // namespace

Composition::Composition(const std::vector<Part>& parts) {
  if (parts.empty()) throw DomainError("a composition needs at least one part");
  for (const auto& part : parts) insert(part.link, part.multiplicity);
}

Composition Composition::of(const BaseLink& link, const Integer& multiplicity) {
  Composition c;
  c.insert(link, multiplicity);
  return c;
}

void Composition::insert(const BaseLink& link, const Integer& multiplicity) {
  if (multiplicity <= 0) {
    throw DomainError("multiplicity of '" + link.name + "' must be positive, got " + multiplicity.get_str());
  }
  const auto it = parts_.find(link.name);
  if (it == parts_.end()) {
    parts_.emplace(link.name, Part{link, multiplicity});
    return;
  }
  if (!(it->second.link == link)) {
    throw DomainError("two different links share the name '" + link.name + "'");
  }
  it->second.multiplicity += multiplicity;
}

Integer Composition::multiplicity(std::string_view name) const {
  const auto it = parts_.find(name);
  return it == parts_.end() ? Integer(0) : it->second.multiplicity;
}

std::string Composition::to_recipe_string() const {
  std::string out;
  for (const auto& [name, part] : parts_) {
    if (!out.empty()) out += ",";
    out += name + "*" + part.multiplicity.get_str();
  }
  return out;
}

bool operator==(const Composition& a, const Composition& b) {
  if (a.parts_.size() != b.parts_.size()) return false;
  auto it = b.parts_.begin();
  for (const auto& [name, part] : a.parts_) {
    if (name != it->first || part.multiplicity != it->second.multiplicity || !(part.link == it->second.link)) {
      return false;
    }
    ++it;
  }
  return true;
}

Composition parse_recipe(std::string_view text, const Catalog& catalog) {
  const auto whole = strip(text);
  if (whole.empty()) throw ParseError("empty recipe");
  std::vector<Composition::Part> parts;
  std::size_t start = 0;
  while (start <= whole.size()) {
    const auto comma = whole.find(',', start);
    const auto item = strip(whole.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) throw ParseError("empty item in recipe '" + std::string(whole) + "'");
    const auto star = item.find('*');
    const auto name = strip(item.substr(0, star));
    const Integer k = star == std::string_view::npos ? Integer(1) : parse_multiplicity(item.substr(star + 1), whole);
    if (!is_valid_link_name(name)) {
      throw ParseError("invalid link name '" + std::string(name) + "' in recipe '" + std::string(whole) + "'");
    }
    parts.push_back({catalog.at(name), k});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Composition(parts);
}

Composition belted_sum(const Composition& x, const Composition& y) {
  Composition out = x;
  for (const auto& [name, part] : y.parts()) out.insert(part.link, part.multiplicity);
  return out;
}

Composition self_sum(const BaseLink& link, const Integer& k) {
  if (k < 1) throw DomainError("self_sum needs k >= 1, got " + k.get_str());
  return Composition::of(link, k);
}

Composition replicate(const Composition& c, const Integer& m) {
  if (m < 1) throw DomainError("replication count must be >= 1, got " + m.get_str());
  std::vector<Composition::Part> parts;
  for (const auto& [name, part] : c.parts()) parts.push_back({part.link, part.multiplicity * m});
  return Composition(parts);
}

ExactVolume volume(const Composition& c) {
  auto it = c.parts().begin();
  ExactVolume total = it->second.link.volume.scaled(it->second.multiplicity);
  for (++it; it != c.parts().end(); ++it) total += it->second.link.volume.scaled(it->second.multiplicity);
  return total;
}

Integer modified_augmentations(const Composition& c) {
  Integer total = 0;
  for (const auto& [name, part] : c.parts()) total += part.multiplicity * part.link.modified_augmentations();
  return total;
}

Integer augmentations(const Composition& c) { return modified_augmentations(c) + 1; }

DensityValue vd(const Composition& c, const PrecisionContext& ctx) {
  auto numerator = volume(c);
  const auto denominator = augmentations(c);
  auto evaluated = numerator.evaluate(ctx) / BigDecimal(denominator, ctx.working_bits());
  return {std::move(numerator), denominator, std::move(evaluated)};
}

DensityValue vd_mod(const Composition& c, const PrecisionContext& ctx) {
  auto numerator = volume(c);
  const auto denominator = modified_augmentations(c);
  auto evaluated = numerator.evaluate(ctx) / BigDecimal(denominator, ctx.working_bits());
  return {std::move(numerator), denominator, std::move(evaluated)};
}

ExactDecimal vd_mod_weighted_average(const Composition& c, const PrecisionContext& ctx) {
  const auto bits = ctx.working_bits();
  SymbolicValue weighted_sum;
  Integer total_weight = 0;
  BigDecimal decimal_sum(0, bits);
  for (const auto& [name, part] : c.parts()) {
    const Integer part_weight = part.link.modified_augmentations();
    const auto part_density = part.link.volume.value() / Rational(part_weight);
    const Integer weight = part.multiplicity * part_weight;
    weighted_sum += part_density * Rational(weight);
    total_weight += weight;
    decimal_sum += BigDecimal(weight, bits) * part_density.evaluate(ctx);
  }
  return {weighted_sum / Rational(total_weight), decimal_sum / BigDecimal(total_weight, bits)};
}

SymbolicValue replication_error_exact(const Composition& c, const Integer& m) {
  if (m < 1) throw DomainError("replication count must be >= 1, got " + m.get_str());
  const auto atilde = modified_augmentations(c);
  return volume(c).value() / Rational(atilde) / Rational(m * atilde + 1);
}

BigDecimal replication_error(const Composition& c, const Integer& m, const PrecisionContext& ctx) {
  return replication_error_exact(c, m).evaluate(ctx);
}

}  // namespace fal
