#include "fal/approx.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fal/error.hpp"
#include "oracles.hpp"

namespace fal {
namespace {

// vd~ = 10, ã = 5
BaseLink decimal_link() { return BaseLink("S10", ExactVolume(0, 0, 50), 6); }
// vd~ = 10 v_tet, ã = 1
BaseLink tetrahedral_link() { return BaseLink("T10", ExactVolume::of_tet(10), 2); }

SymbolicValue modified_density(const BaseLink& link) {
  return link.volume.value() / Rational(link.modified_augmentations());
}

void expect_consistent(const Recipe& recipe, const PrecisionContext& ctx) {
  EXPECT_EQ(vd(recipe.composition, ctx).exact(), recipe.achieved_vd.exact());
  EXPECT_EQ(vd_mod(recipe.composition, ctx).exact(), recipe.achieved_vd_mod.exact());
}

TEST(AlphaTest, Examples) {
  const PrecisionContext ctx;
  const auto v1 = SymbolicValue::of_oct(2);
  const auto v2 = SymbolicValue::of_rational(10);
  const auto at_v1 = alpha_for_target(v1, v1, v2, ctx);
  ASSERT_TRUE(at_v1.exact);
  EXPECT_EQ(*at_v1.exact, 1);
  const auto midpoint = alpha_for_target((v1 + v2) / Rational(2), v1, v2, ctx);
  ASSERT_TRUE(midpoint.exact);
  EXPECT_EQ(*midpoint.exact, Rational(1, 2));
  const auto nine = alpha_for_target(SymbolicValue::of_rational(9), v1, v2, ctx);
  EXPECT_FALSE(nine.exact);
  EXPECT_EQ(nine.value.to_string(6), "0.374213");
  EXPECT_TRUE(within_tolerance(nine.value, BigDecimal::parse("0.3742129487892263715", ctx.working_bits()),
                               PrecisionContext(20)));
}

TEST(AlphaTest, Errors) {
  const PrecisionContext ctx;
  const auto v = SymbolicValue::of_oct(2);
  EXPECT_THROW(alpha_for_target(v, v, v, ctx), DomainError);
  EXPECT_THROW(alpha_for_target(SymbolicValue::of_rational(11), v, SymbolicValue::of_rational(10), ctx), DomainError);
  EXPECT_THROW(alpha_for_target(SymbolicValue::of_oct(1), v, SymbolicValue::of_rational(10), ctx), DomainError);
}

TEST(TargetRatioTest, Examples) {
  const PrecisionContext ctx;
  const auto bits = ctx.working_bits();
  const auto half = target_ratio({Rational(1, 2), BigDecimal(Rational(1, 2), bits)}, 3, 3, ctx);
  EXPECT_EQ(*half.exact, 1);
  const auto two = target_ratio({Rational(2, 3), BigDecimal(Rational(2, 3), bits)}, 2, 2, ctx);
  EXPECT_EQ(*two.exact, 2);
  const auto alpha = alpha_for_target(SymbolicValue::of_rational(9), SymbolicValue::of_oct(2), SymbolicValue::of_rational(10), ctx);
  const auto r = target_ratio(alpha, 1, 5, ctx);
  EXPECT_EQ(r.value.to_string(6), "2.98994");
  EXPECT_THROW(target_ratio({Rational(1), BigDecimal(1, bits)}, 1, 1, ctx), DomainError);
  EXPECT_THROW(target_ratio({Rational(0), BigDecimal(0, bits)}, 1, 1, ctx), DomainError);
}

TEST(ConvergentTest, Examples) {
  EXPECT_EQ(best_rational_approximations(Rational(2), 100), (std::vector<Convergent>{{2, 1}}));
  EXPECT_EQ(best_rational_approximations(Rational(3, 2), 100), (std::vector<Convergent>{{1, 1}, {3, 2}}));
  const Rational r(298948, 100000);
  const auto convergents = best_rational_approximations(r, 100);
  ASSERT_FALSE(convergents.empty());
  const auto& last = convergents.back();
  EXPECT_LE(last.denominator, 100);
  EXPECT_LT(abs(r - Rational(last.numerator, last.denominator)), Rational(1, 10000));
  EXPECT_EQ(last, testing::brute_force_best_approximation(r, 100));
  EXPECT_THROW(best_rational_approximations(Rational(0), 10), DomainError);
}

TEST(ConvergentTest, MatchesBruteForceSearch) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> numerator(1, 99'999'999);
  for (int i = 0; i < 200; ++i) {
    Rational r(numerator(rng), 1'000'000);
    r.canonicalize();
    Integer previous_q = 0;
    for (const auto& c : best_rational_approximations(r, 1'000'000)) {
      EXPECT_GT(c.denominator, previous_q);
      previous_q = c.denominator;
      const Rational p_over_q(c.numerator, c.denominator);
      EXPECT_LE(abs(r - p_over_q), Rational(1) / (Rational(c.denominator) * c.denominator));
      if (c.denominator <= 50) {
        EXPECT_EQ(c, testing::brute_force_best_approximation(r, c.denominator.get_si())) << r.get_str();
      }
    }
  }
}

TEST(ConvergentTest, DecimalInputUsesExactBinaryValue) {
  const PrecisionContext ctx;
  const auto r = v_oct(ctx) / v_tet(ctx);
  const auto convergents = best_rational_approximations(r, 1000);
  // 3.6099... = [3; 1, 1, ...], so 3/1 is dropped in favour of 4/1
  EXPECT_EQ(convergents.front(), (Convergent{4, 1}));
  EXPECT_EQ(convergents, best_rational_approximations(r.to_rational(), 1000));
}

TEST(ApproximateVdModTest, EndpointIsSingleLink) {
  const PrecisionContext ctx;
  const auto recipe = approximate_vd_mod(SymbolicValue::of_oct(2), figure_eight(), decimal_link(), Rational(1, 1000), ctx);
  EXPECT_EQ(recipe.k, 1);
  EXPECT_EQ(recipe.l, 0);
  EXPECT_EQ(recipe.m, 1);
  EXPECT_TRUE(recipe.error.is_zero());
  EXPECT_EQ(recipe.recipe_string(), "L41*1");
  expect_consistent(recipe, ctx);
}

TEST(ApproximateVdModTest, MidpointWithEqualWeights) {
  const PrecisionContext ctx;
  const auto target = (modified_density(figure_eight()) + modified_density(tetrahedral_link())) / Rational(2);
  const auto recipe = approximate_vd_mod(target, figure_eight(), tetrahedral_link(), Rational(1, 1'000'000), ctx);
  EXPECT_EQ(recipe.k, 1);
  EXPECT_EQ(recipe.l, 1);
  EXPECT_EQ(recipe.achieved_vd_mod.exact(), target);
  EXPECT_TRUE(recipe.error.is_zero());
  expect_consistent(recipe, ctx);
}

TEST(ApproximateVdModTest, TargetNineAgainstDecimalLink) {
  const PrecisionContext ctx;
  const auto target = SymbolicValue::of_rational(9);
  const Rational eps(1, 1'000'000);
  const auto recipe = approximate_vd_mod(target, figure_eight(), decimal_link(), eps, ctx);
  EXPECT_GE(recipe.k, 1);
  EXPECT_GE(recipe.l, 1);
  // (k ã1 vd~1 + l ã2 vd~2) / (k ã1 + l ã2) evaluated directly
  const auto bits = ctx.working_bits();
  const BigDecimal k(recipe.k, bits), l(recipe.l, bits);
  const auto average = (k * BigDecimal(2, bits) * v_oct(ctx) + l * BigDecimal(50, bits)) / (k + l * BigDecimal(5, bits));
  EXPECT_LT((average - BigDecimal(9, bits)).abs(), BigDecimal(eps, bits));
  EXPECT_TRUE(within_tolerance(average, recipe.achieved_vd_mod.evaluated, ctx));
  expect_consistent(recipe, ctx);
}

TEST(ApproximateVdModTest, MonotoneRefinement) {
  const PrecisionContext ctx;
  for (const auto& target : {SymbolicValue::of_rational(9), SymbolicValue::parse("7.5"), SymbolicValue::parse("9.99")}) {
    BigDecimal previous = BigDecimal(1'000, ctx.working_bits());
    Rational eps(1);
    for (int e = 1; e <= 14; ++e) {
      eps /= 10;
      const auto recipe = approximate_vd_mod(target, figure_eight(), decimal_link(), eps, ctx);
      EXPECT_LE(recipe.error, previous) << "eps=1e-" << e;
      previous = recipe.error;
    }
  }
}

TEST(ApproximateVdModTest, Errors) {
  const PrecisionContext ctx;
  const auto target = SymbolicValue::of_rational(9);
  EXPECT_THROW(approximate_vd_mod(target, figure_eight(), decimal_link(), 0, ctx), DomainError);
  EXPECT_THROW(approximate_vd_mod(target, figure_eight(), decimal_link(), -1, ctx), DomainError);
  EXPECT_THROW(approximate_vd_mod(SymbolicValue::of_rational(11), figure_eight(), decimal_link(), Rational(1, 10), ctx),
               DomainError);
  EXPECT_THROW(approximate_vd_mod(target, figure_eight(), figure_eight(), Rational(1, 10), ctx), DomainError);
  ApproxOptions capped;
  capped.max_denominator = 2;
  EXPECT_THROW(approximate_vd_mod(target, figure_eight(), decimal_link(), Rational(1, 1'000'000'000), ctx, capped),
               CapExceededError);
}

TEST(ApproximateVdTest, ReplicatesFigureEightTowardItsModifiedDensity) {
  const PrecisionContext ctx;
  const Rational eps(1, 1000);
  const auto recipe = approximate_vd(SymbolicValue::of_oct(2), figure_eight(), figure_eight(), eps, ctx);
  EXPECT_EQ(recipe.k, 1);
  EXPECT_EQ(recipe.l, 0);
  EXPECT_EQ(recipe.m, 14655);
  // M copies of L41 have vd = 2 M v_oct / (M + 1)
  const Integer copies = recipe.m * recipe.k;
  EXPECT_EQ(recipe.achieved_vd.exact(), SymbolicValue::of_oct(Rational(2 * copies, copies + 1)));
  EXPECT_LT(recipe.error, BigDecimal(eps, ctx.working_bits()));
  // m - 1 copies would miss eps/2
  EXPECT_GE(compare(replication_error_exact(Composition::of(figure_eight()), recipe.m - 1),
                    SymbolicValue::of_rational(eps / 2), ctx).sign, 0);
  expect_consistent(recipe, ctx);
}

TEST(ApproximateVdTest, LargeEpsNeedsNoReplication) {
  const PrecisionContext ctx;
  const auto recipe = approximate_vd(SymbolicValue::of_oct(2), figure_eight(), decimal_link(), 20, ctx);
  EXPECT_EQ(recipe.m, 1);
  expect_consistent(recipe, ctx);
}

TEST(ApproximateVdTest, RecipesReproduceThroughCalculus) {
  const PrecisionContext ctx;
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<long> offset(1, 99'999);
  for (int i = 0; i < 20; ++i) {
    // targets in (2 v_oct, 2 v_oct + 2)
    const auto target = SymbolicValue(2, 0, Rational(offset(rng), 50'000));
    const auto recipe = approximate_vd(target, figure_eight(), decimal_link(), Rational(1, 1'000'000), ctx);
    expect_consistent(recipe, ctx);
    std::vector<Composition::Part> parts;
    if (recipe.k > 0) parts.push_back({figure_eight(), recipe.k * recipe.m});
    if (recipe.l > 0) parts.push_back({decimal_link(), recipe.l * recipe.m});
    EXPECT_EQ(recipe.composition, Composition(parts));
    EXPECT_LT(recipe.error, BigDecimal(Rational(1, 1'000'000), ctx.working_bits()));
  }
}

}  // namespace
}  // namespace fal
