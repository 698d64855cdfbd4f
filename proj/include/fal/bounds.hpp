#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fal/calculus.hpp"
#include "fal/catalog.hpp"
#include "fal/numerics.hpp"
#include "fal/symbolic.hpp"

namespace fal {

// Windows of the density line cut at v_oct, 2·v_oct and 10·v_tet.
// Each window is half-open on the right.
enum class WindowClass { kBelowSpectrum, kDiscreteWindow, kDenseWindow, kAtOrAboveUpperBound };

std::string to_string(WindowClass window);

struct Classification {
  WindowClass window;
  // |d - boundary| is below the context tolerance for some boundary whose
  // comparison could not be settled symbolically.
  bool near_boundary = false;
};

// Finiteness certificate: every FAL with vd(L) <= threshold has a(L) <= n.
struct Certificate {
  SymbolicValue threshold;
  BigDecimal threshold_decimal;
  Integer max_augmentations;
  std::string statement;
};

// χ(N_L) = 1 - a. Throws DomainError for a < 2.
Integer euler_characteristic(const Integer& a);

// 2(a - 1)·v_oct.
ExactDecimal miyamoto_volume_lower_bound(const Integer& a, const PrecisionContext& ctx);

// 2·v_oct·(a - 1)/a; strictly increasing in a with supremum 2·v_oct.
ExactDecimal vd_lower_bound(const Integer& a, const PrecisionContext& ctx);

// Largest n with vd_lower_bound(n) <= d, for v_oct <= d < 2·v_oct.
// Throws DomainError outside that window.
Certificate max_augmentations_below(const SymbolicValue& d, const PrecisionContext& ctx);

Classification classify(const SymbolicValue& d, const PrecisionContext& ctx);

struct ScanRow {
  Composition composition;
  Integer a;
  Integer atilde;
  DensityValue vd;
  DensityValue vd_mod;
};

struct ScanOptions {
  std::size_t max_rows = 1'000'000;
};

// Number of nonempty multisets over the catalog with Σ k_i ã_i <= budget.
Integer count_compositions(const Catalog& catalog, long budget);

// Every nonempty multiset over the catalog with Σ k_i ã_i <= budget, sorted by
// vd (ties by recipe string). Throws CapExceededError if there would be more
// than options.max_rows rows, DomainError for budget < 1.
std::vector<ScanRow> spectrum_scan(const Catalog& catalog, long budget, const PrecisionContext& ctx,
                                   const ScanOptions& options = {});

// recipe,a,atilde,vd_exact,vd_decimal,vdmod_exact,vdmod_decimal
std::string scan_to_csv(const std::vector<ScanRow>& rows, const PrecisionContext& ctx);

}  // namespace fal
