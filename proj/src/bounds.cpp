#include "fal/bounds.hpp"

#include <algorithm>
#include <functional>

#include "fal/error.hpp"

namespace fal {

namespace {

constexpr long kMaxCountableBudget = 10'000'000;

void require_augmentations(const Integer& a, const char* op) {
  if (a < BaseLink::kMinAugmentations) {
    throw DomainError(std::string(op) + ": augmentation count must be >= 2, got " + a.get_str());
  }
}

SymbolicValue lower_bound_exact(const Integer& a) {
  // 2 v_oct (a - 1) / a; a = 1 gives 0.
  return SymbolicValue::of_oct(Rational(2 * (a - 1), a));
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Counts multisets, the empty one included; stops early once past `limit`.
std::size_t count_up_to(const std::vector<Integer>& weights, std::size_t index, long remaining, std::size_t limit) {
  if (index == weights.size()) return 1;
  std::size_t total = 0;
  const long w = weights[index].get_si();
  for (long used = 0; used <= remaining; used += w) {
    total += count_up_to(weights, index + 1, remaining - used, limit);
    if (total > limit) return total;
  }
  return total;
}

}  // namespace

std::string to_string(WindowClass window) {
  switch (window) {
    case WindowClass::kBelowSpectrum: return "BelowSpectrum";
    case WindowClass::kDiscreteWindow: return "DiscreteWindow";
    case WindowClass::kDenseWindow: return "DenseWindow";
    case WindowClass::kAtOrAboveUpperBound: return "AtOrAboveUpperBound";
  }
  return "unknown";
}

Integer euler_characteristic(const Integer& a) {
  require_augmentations(a, "euler_characteristic");
  return 1 - a;
}

ExactDecimal miyamoto_volume_lower_bound(const Integer& a, const PrecisionContext& ctx) {
  require_augmentations(a, "miyamoto_volume_lower_bound");
  auto exact = SymbolicValue::of_oct(Rational(2 * (a - 1)));
  auto decimal = exact.evaluate(ctx);
  return {std::move(exact), std::move(decimal)};
}

ExactDecimal vd_lower_bound(const Integer& a, const PrecisionContext& ctx) {
  require_augmentations(a, "vd_lower_bound");
  auto exact = lower_bound_exact(a);
  auto decimal = exact.evaluate(ctx);
  return {std::move(exact), std::move(decimal)};
}

Certificate max_augmentations_below(const SymbolicValue& d, const PrecisionContext& ctx) {
  const auto lower = compare(d, SymbolicValue::of_oct(1), ctx);
  if (lower.sign < 0 && !lower.near_zero) {
    throw DomainError("density " + d.evaluate(ctx).to_string(ctx.digits()) +
                      " is below v_oct, where the spectrum starts");
  }
  if (compare(d, SymbolicValue::of_oct(2), ctx).sign >= 0) {
    throw DomainError("density " + d.evaluate(ctx).to_string(ctx.digits()) +
                      " is at or above 2 v_oct; densities are dense there and no finite certificate exists");
  }
  // vd_lower_bound(a) <= d  iff  a <= 2 / (2 - x)  with  x = d / v_oct.
  Integer n;
  if (d.tet() == 0 && d.rem() == 0) {
    const Rational bound = Rational(2) / (Rational(2) - d.oct());
    mpz_fdiv_q(n.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  } else {
    const auto bits = ctx.working_bits();
    const auto x = d.evaluate(ctx) / v_oct(ctx);
    n = (BigDecimal(2, bits) / (BigDecimal(2, bits) - x)).floor();
  }
  if (n < 1) n = 1;
  while (compare(lower_bound_exact(n + 1), d, ctx).sign <= 0) ++n;
  while (n > 1 && compare(lower_bound_exact(n), d, ctx).sign > 0) --n;

  const auto decimal = d.evaluate(ctx);
  std::string statement = "every FAL L with vd(L) <= " + decimal.to_string(ctx.digits()) + " has a(L) <= " +
                          n.get_str() + "; only finitely many FALs have at most " + n.get_str() +
                          " augmentations, so finitely many FAL volume densities lie in [v_oct, " +
                          decimal.to_string(ctx.digits()) + "]";
  return {d, decimal, n, std::move(statement)};
}

Classification classify(const SymbolicValue& d, const PrecisionContext& ctx) {
  const SymbolicValue boundaries[] = {SymbolicValue::of_oct(1), SymbolicValue::of_oct(2), SymbolicValue::of_tet(10)};
  const auto tolerance = BigDecimal::pow10(ctx.tolerance_exponent(), ctx.working_bits());
  int signs[3];
  bool near = false;
  for (int i = 0; i < 3; ++i) {
    const auto diff = d - boundaries[i];
    signs[i] = sign_of(diff, ctx).sign;
    if (!diff.is_zero() && diff.evaluate(ctx).abs() <= tolerance) near = true;
  }
  WindowClass window = WindowClass::kAtOrAboveUpperBound;
  if (signs[0] < 0) {
    window = WindowClass::kBelowSpectrum;
  } else if (signs[1] < 0) {
    window = WindowClass::kDiscreteWindow;
  } else if (signs[2] < 0) {
    window = WindowClass::kDenseWindow;
  }
  return {window, near};
}

Integer count_compositions(const Catalog& catalog, long budget) {
  if (budget < 1) throw DomainError("scan budget must be >= 1, got " + std::to_string(budget));
  if (budget > kMaxCountableBudget) {
    throw CapExceededError("budget " + std::to_string(budget) + " is too large to count compositions for");
  }
  std::vector<Integer> ways(static_cast<std::size_t>(budget) + 1, Integer(0));
  ways[0] = 1;
  for (const auto& [name, link] : catalog.entries()) {
    const long w = link.modified_augmentations();
    for (long b = w; b <= budget; ++b) ways[b] += ways[b - w];
  }
  Integer total = -1;  // drop the empty multiset
  for (const auto& w : ways) total += w;
  return total;
}

std::vector<ScanRow> spectrum_scan(const Catalog& catalog, long budget, const PrecisionContext& ctx,
                                   const ScanOptions& options) {
  if (budget < 1) throw DomainError("scan budget must be >= 1, got " + std::to_string(budget));
  std::vector<const BaseLink*> links;
  std::vector<Integer> weights;
  for (const auto& [name, link] : catalog.entries()) {
    links.push_back(&link);
    weights.emplace_back(link.modified_augmentations());
  }
  if (count_up_to(weights, 0, budget, options.max_rows + 1) - 1 > options.max_rows) {
    std::string estimate = "more than " + std::to_string(options.max_rows);
    if (budget <= kMaxCountableBudget) estimate = count_compositions(catalog, budget).get_str();
    throw CapExceededError("scan with budget " + std::to_string(budget) + " would emit " + estimate +
                           " rows; the cap is " + std::to_string(options.max_rows));
  }

  std::vector<ScanRow> rows;
  std::vector<Composition::Part> chosen;
  std::function<void(std::size_t, long)> visit = [&](std::size_t index, long remaining) {
    if (index == links.size()) {
      if (chosen.empty()) return;
      Composition c(chosen);
      auto a = augmentations(c);
      auto atilde = modified_augmentations(c);
      auto density = vd(c, ctx);
      auto modified = vd_mod(c, ctx);
      rows.push_back({std::move(c), std::move(a), std::move(atilde), std::move(density), std::move(modified)});
      return;
    }
    visit(index + 1, remaining);
    const long w = weights[index].get_si();
    long k = 1;
    for (long used = w; used <= remaining; used += w, ++k) {
      chosen.push_back({*links[index], k});
      visit(index + 1, remaining - used);
      chosen.pop_back();
    }
  };
  visit(0, budget);

  std::vector<std::string> keys;
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    order[i] = i;
    keys.push_back(rows[i].composition.to_recipe_string());
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (rows[x].vd.evaluated < rows[y].vd.evaluated) return true;
    if (rows[y].vd.evaluated < rows[x].vd.evaluated) return false;
    return keys[x] < keys[y];
  });
  std::vector<ScanRow> sorted;
  sorted.reserve(rows.size());
  for (auto i : order) sorted.push_back(std::move(rows[i]));
  return sorted;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows, const PrecisionContext& ctx) {
  std::string out = "recipe,a,atilde,vd_exact,vd_decimal,vdmod_exact,vdmod_decimal\n";
  for (const auto& row : rows) {
    out += csv_field(row.composition.to_recipe_string()) + "," + row.a.get_str() + "," + row.atilde.get_str() + "," +
           row.vd.exact().to_string() + "," + row.vd.evaluated.to_string(ctx.digits()) + "," +
           row.vd_mod.exact().to_string() + "," + row.vd_mod.evaluated.to_string(ctx.digits()) + "\n";
  }
  return out;
}

}  // namespace fal
