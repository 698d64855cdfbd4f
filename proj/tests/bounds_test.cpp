#include "fal/bounds.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fal/error.hpp"

namespace fal {
namespace {

TEST(EulerCharacteristicTest, Examples) {
  EXPECT_EQ(euler_characteristic(2), -1);
  EXPECT_EQ(euler_characteristic(3), -2);
  EXPECT_EQ(euler_characteristic(10), -9);
  EXPECT_THROW(euler_characteristic(1), DomainError);
}

TEST(LowerBoundTest, Examples) {
  const PrecisionContext ctx;
  const auto two = miyamoto_volume_lower_bound(2, ctx);
  EXPECT_EQ(two.exact, SymbolicValue::of_oct(2));
  EXPECT_EQ(two.decimal.to_string(7), "7.327725");
  EXPECT_EQ(two.exact, figure_eight().volume.value());
  EXPECT_EQ(miyamoto_volume_lower_bound(3, ctx).exact, SymbolicValue::of_oct(4));
  EXPECT_EQ(vd_lower_bound(2, ctx).exact, SymbolicValue::of_oct(1));
  EXPECT_EQ(vd_lower_bound(4, ctx).exact, SymbolicValue::of_oct(Rational(3, 2)));
  EXPECT_THROW(vd_lower_bound(1, ctx), DomainError);
  EXPECT_THROW(miyamoto_volume_lower_bound(0, ctx), DomainError);
}

TEST(LowerBoundTest, IncreasingAndBelowTwoVoct) {
  const PrecisionContext ctx;
  const auto sup = SymbolicValue::of_oct(2);
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> a_dist(2, 999'999);
  for (int i = 0; i < 500; ++i) {
    const Integer a = i < 20 ? Integer(2 + i) : Integer(a_dist(rng));
    const auto here = vd_lower_bound(a, ctx);
    const auto next = vd_lower_bound(a + 1, ctx);
    EXPECT_EQ(compare(here.exact, next.exact, ctx).sign, -1);
    EXPECT_EQ(compare(here.exact, sup, ctx).sign, -1);
    EXPECT_LT(here.decimal, next.decimal);
  }
  EXPECT_LT(vd_lower_bound(1'000'000, ctx).decimal, SymbolicValue::of_oct(2).evaluate(ctx));
}

TEST(CertificateTest, Examples) {
  const PrecisionContext ctx;
  EXPECT_EQ(max_augmentations_below(SymbolicValue::of_oct(1), ctx).max_augmentations, 2);
  EXPECT_EQ(max_augmentations_below(SymbolicValue::of_oct(Rational(3, 2)), ctx).max_augmentations, 4);
  EXPECT_EQ(max_augmentations_below(SymbolicValue::of_oct(Rational(19, 10)), ctx).max_augmentations, 20);
  const auto decimal = max_augmentations_below(SymbolicValue::parse("5.5"), ctx);
  // 2/(2 - 5.5/v_oct) = 4.0...
  EXPECT_EQ(decimal.max_augmentations, 4);
  EXPECT_NE(decimal.statement.find("a(L) <= 4"), std::string::npos);
}

TEST(CertificateTest, Errors) {
  const PrecisionContext ctx;
  EXPECT_THROW(max_augmentations_below(SymbolicValue::of_oct(2), ctx), DomainError);
  EXPECT_THROW(max_augmentations_below(SymbolicValue::of_rational(9), ctx), DomainError);
  EXPECT_THROW(max_augmentations_below(SymbolicValue::of_rational(3), ctx), DomainError);
}

TEST(CertificateTest, SoundAndTight) {
  const PrecisionContext ctx;
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<long> fraction(0, 999'999'999);
  for (int i = 0; i < 300; ++i) {
    // exact thresholds (1 + t) v_oct and decimal thresholds in the same window
    const Rational t(fraction(rng), 1'000'000'000);
    const auto d = i % 2 == 0 ? SymbolicValue::of_oct(1 + t)
                              : SymbolicValue::of_rational(Rational(366'386'238 + fraction(rng) * 366 / 1000, 100'000'000));
    const auto certificate = max_augmentations_below(d, ctx);
    const auto& n = certificate.max_augmentations;
    EXPECT_LE(compare(vd_lower_bound(n, ctx).exact, d, ctx).sign, 0) << d.to_string();
    EXPECT_GT(compare(vd_lower_bound(n + 1, ctx).exact, d, ctx).sign, 0) << d.to_string();
  }
}

TEST(ClassifyTest, Examples) {
  const PrecisionContext ctx;
  EXPECT_EQ(classify(SymbolicValue::of_oct(1), ctx).window, WindowClass::kDiscreteWindow);
  EXPECT_EQ(classify(SymbolicValue::of_oct(2), ctx).window, WindowClass::kDenseWindow);
  EXPECT_EQ(classify(SymbolicValue::of_tet(10), ctx).window, WindowClass::kAtOrAboveUpperBound);
  EXPECT_EQ(classify(SymbolicValue::of_rational(9), ctx).window, WindowClass::kDenseWindow);
  EXPECT_EQ(classify(SymbolicValue::of_rational(3), ctx).window, WindowClass::kBelowSpectrum);
  EXPECT_EQ(classify(SymbolicValue::of_rational(11), ctx).window, WindowClass::kAtOrAboveUpperBound);
  EXPECT_FALSE(classify(SymbolicValue::of_oct(2), ctx).near_boundary);
}

TEST(ClassifyTest, DecimalNearBoundaryIsReported) {
  const PrecisionContext ctx;
  const auto near = classify(SymbolicValue::parse(v_oct(PrecisionContext(40)).to_string(40)), ctx);
  EXPECT_TRUE(near.near_boundary);
  EXPECT_FALSE(classify(SymbolicValue::of_rational(9), ctx).near_boundary);
}

TEST(ClassifyTest, IsAPartition) {
  const PrecisionContext ctx;
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> value(0, 12'000'000);
  for (int i = 0; i < 300; ++i) {
    const auto d = SymbolicValue::of_rational(Rational(value(rng), 1'000'000));
    const auto x = d.evaluate(ctx);
    const auto bits = ctx.working_bits();
    WindowClass expected = WindowClass::kAtOrAboveUpperBound;
    if (x < v_oct(ctx)) {
      expected = WindowClass::kBelowSpectrum;
    } else if (x < BigDecimal(2, bits) * v_oct(ctx)) {
      expected = WindowClass::kDiscreteWindow;
    } else if (x < BigDecimal(10, bits) * v_tet(ctx)) {
      expected = WindowClass::kDenseWindow;
    }
    EXPECT_EQ(classify(d, ctx).window, expected) << d.to_string();
  }
}

TEST(ScanTest, FigureEightBudgetThree) {
  const PrecisionContext ctx;
  const auto rows = spectrum_scan(Catalog::builtin(), 3, ctx);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].vd.exact(), SymbolicValue::of_oct(1));
  EXPECT_EQ(rows[1].vd.exact(), SymbolicValue::of_oct(Rational(4, 3)));
  EXPECT_EQ(rows[2].vd.exact(), SymbolicValue::of_oct(Rational(6, 4)));
  EXPECT_EQ(rows[2].a, 4);
  EXPECT_EQ(rows[2].atilde, 3);
}

TEST(ScanTest, BudgetOneGivesSingleLinks) {
  auto catalog = Catalog::builtin();
  catalog.add(BaseLink("S", ExactVolume::of_tet(50), 6));
  catalog.add(BaseLink("T", ExactVolume::of_tet(10), 2));
  const auto rows = spectrum_scan(catalog, 1, PrecisionContext());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].composition.to_recipe_string(), "L41*1");
  EXPECT_EQ(rows[1].composition.to_recipe_string(), "T*1");
}

TEST(ScanTest, RowsRespectLowerBound) {
  const PrecisionContext ctx;
  auto catalog = Catalog::builtin();
  catalog.add(BaseLink("S", ExactVolume::of_tet(50), 6));
  catalog.add(BaseLink("U", ExactVolume(4, 1, Rational(1, 4)), 3));
  const auto rows = spectrum_scan(catalog, 12, ctx);
  EXPECT_EQ(Integer(rows.size()), count_compositions(catalog, 12));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_GE(compare(rows[i].vd.exact(), vd_lower_bound(rows[i].a, ctx).exact, ctx).sign, 0);
    if (i > 0) EXPECT_LE(rows[i - 1].vd.evaluated, rows[i].vd.evaluated);
  }
}

TEST(ScanTest, DiscreteValuesAreSeparated) {
  // Below 2 v_oct the built-in rows are vd = 2 v_oct M/(M+1), pairwise
  // separated by at least the gap at the budget.
  const PrecisionContext ctx;
  const long budget = 40;
  const auto rows = spectrum_scan(Catalog::builtin(), budget, ctx);
  const auto min_gap = SymbolicValue::of_oct(Rational(2, budget * (budget + 1)));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(compare(rows[i].vd.exact() - rows[i - 1].vd.exact(), min_gap, ctx).sign, 0);
  }
}

TEST(ScanTest, CapAndErrors) {
  const PrecisionContext ctx;
  auto catalog = Catalog::builtin();
  catalog.add(BaseLink("T", ExactVolume::of_tet(10), 2));
  catalog.add(BaseLink("U", ExactVolume::of_tet(12), 2));
  ScanOptions options;
  options.max_rows = 100;
  try {
    spectrum_scan(catalog, 50, ctx, options);
    FAIL() << "expected CapExceededError";
  } catch (const CapExceededError& e) {
    EXPECT_NE(std::string(e.what()).find(count_compositions(catalog, 50).get_str()), std::string::npos) << e.what();
  }
  EXPECT_THROW(spectrum_scan(catalog, 0, ctx), DomainError);
  // stars and bars: C(50 + 3, 3) - 1
  EXPECT_EQ(count_compositions(catalog, 50), 23425);
}

TEST(ScanTest, CsvLayout) {
  const PrecisionContext ctx;
  const auto csv = scan_to_csv(spectrum_scan(Catalog::builtin(), 2, ctx), ctx);
  EXPECT_EQ(csv,
            "recipe,a,atilde,vd_exact,vd_decimal,vdmod_exact,vdmod_decimal\n"
            "L41*1,2,1,1*voct+0*vtet+0,3.66386237670887606021841405973,2*voct+0*vtet+0,"
            "7.32772475341775212043682811946\n"
            "L41*2,3,2,4/3*voct+0*vtet+0,4.88514983561183474695788541297,2*voct+0*vtet+0,"
            "7.32772475341775212043682811946\n");
}

}  // namespace
}  // namespace fal
