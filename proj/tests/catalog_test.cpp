#include "fal/catalog.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "fal/error.hpp"
#include "generators.hpp"

namespace fal {
namespace {

bool has_code(const std::vector<Diagnostic>& diagnostics, const std::string& code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.code == code; });
}

TEST(CatalogTest, FigureEightOnly) {
  const auto catalog = load_catalog(R"({"links": [{"name": "L41", "c_oct": "2", "a": 2}]})");
  ASSERT_EQ(catalog.size(), 1u);
  const auto& link = catalog.at("L41");
  EXPECT_EQ(link.volume, ExactVolume::of_oct(2));
  EXPECT_EQ(link.augmentations, 2);
  EXPECT_EQ(link.volume, figure_eight().volume);
  EXPECT_EQ(load_catalog(R"({"links": []})"), Catalog::builtin());
}

TEST(CatalogTest, RejectsSingleAugmentation) {
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "c_oct": "1", "a": 1}]})"), DomainError);
  EXPECT_THROW(BaseLink("X", ExactVolume::of_oct(1), 1), DomainError);
}

TEST(CatalogTest, SyntheticTetrahedralEntry) {
  const auto catalog = load_catalog(R"({"links": [{"name": "S", "c_tet": "50", "remainder": "0", "a": 6}]})");
  EXPECT_EQ(catalog.size(), 2u);
  const PrecisionContext ctx;
  const auto& link = catalog.at("S");
  const auto vd = (link.volume.value() / Rational(link.augmentations)).evaluate(ctx);
  EXPECT_EQ(vd.to_string(4), "8.458");
}

TEST(CatalogTest, RejectsBadDocuments) {
  EXPECT_THROW(load_catalog("not json"), ParseError);
  EXPECT_THROW(load_catalog(R"({"entries": []})"), ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"c_oct": "1", "a": 2}]})"), ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "c_oct": "1"}]})"), ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "c_oct": "one", "a": 2}]})"), ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "c_oct": "1", "a": 2}, {"name": "X", "c_oct": "2", "a": 3}]})"),
               ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "a": 2}]})"), DomainError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "c_oct": "-1", "a": 2}]})"), DomainError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "X", "remainder": "1/3", "a": 2}]})"), ParseError);
  EXPECT_THROW(load_catalog(R"({"links": [{"name": "bad name", "c_oct": "1", "a": 2}]})"), DomainError);
}

TEST(CatalogTest, DuplicateAddThrows) {
  auto catalog = Catalog::builtin();
  EXPECT_THROW(catalog.add(figure_eight()), ParseError);
  EXPECT_THROW(catalog.at("missing"), DomainError);
}

TEST(CatalogTest, SaveLoadRoundTrip) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    auto catalog = Catalog::builtin();
    const int n = 1 + trial % 7;
    for (int i = 0; i < n; ++i) catalog.put(testing::random_link(rng, "R" + std::to_string(i), i % 2 == 1));
    const auto text = save_catalog(catalog);
    const auto reloaded = load_catalog(text);
    EXPECT_EQ(reloaded, catalog);
    EXPECT_EQ(save_catalog(reloaded), text);
  }
}

TEST(ValidateTest, FigureEightIsClean) {
  EXPECT_TRUE(validate_entry(figure_eight(), PrecisionContext()).empty());
}

TEST(ValidateTest, BelowMiyamotoBound) {
  const auto diagnostics = validate_entry(BaseLink("X", ExactVolume::of_oct(1), 2), PrecisionContext());
  EXPECT_TRUE(has_code(diagnostics, "miyamoto-bound"));
  EXPECT_TRUE(has_code(diagnostics, "below-spectrum"));
  for (const auto& d : diagnostics) EXPECT_EQ(d.severity, Severity::kWarning);
}

TEST(ValidateTest, AboveSpectrum) {
  const BaseLink link("X", ExactVolume::of_tet(30), 2);
  const auto diagnostics = validate_entry(link, PrecisionContext());
  EXPECT_TRUE(has_code(diagnostics, "above-spectrum"));
  EXPECT_FALSE(has_code(diagnostics, "miyamoto-bound"));
  EXPECT_EQ(link, BaseLink("X", ExactVolume::of_tet(30), 2));
}

TEST(ValidateTest, DecimalRemainderNearBound) {
  // vol = 7.3277 < 2 v_oct = 7.32772475...
  const BaseLink link("X", ExactVolume(0, 0, Rational(73277, 10000)), 2);
  EXPECT_TRUE(has_code(validate_entry(link, PrecisionContext()), "miyamoto-bound"));
}

}  // namespace
}  // namespace fal
