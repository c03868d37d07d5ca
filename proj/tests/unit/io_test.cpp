#include <gtest/gtest.h>

#include <filesystem>

#include "lca/io.hpp"

namespace lca {
namespace {

using namespace sym;

std::filesystem::path data(const char* name) { return std::filesystem::path(LCA_TEST_DATA_DIR) / name; }

AlgebraPtr share(Algebra a) { return std::make_shared<const Algebra>(std::move(a)); }

TEST(AlgebraFile, LoopVirasoroFileMatchesCatalog) {
  const Algebra loaded = load_algebra(data("cw_m4.json"));
  EXPECT_EQ(loaded, make_catalog(CatalogKind::CW, 4));
}

TEST(AlgebraFile, VirasoroPatternRule) {
  const Algebra loaded = load_algebra(data("vir.json"));
  EXPECT_EQ(loaded.rule(0, 0).coeff, d() + 2 * l());
  EXPECT_TRUE(loaded.same_structure(make_catalog(CatalogKind::Vir, 1)));
}

TEST(AlgebraFile, NullTargetAndSymbolicB) {
  const Algebra loaded = load_algebra(data("clw_m2.json"));
  EXPECT_EQ(loaded, make_catalog(CatalogKind::CLW, 2));
}

TEST(AlgebraFile, Errors) {
  EXPECT_THROW(load_algebra(data("duplicate_rule.json")), AlgebraError);
  EXPECT_THROW(load_algebra(data("missing_rule.json")), AlgebraError);
  EXPECT_THROW(load_algebra(data("unknown_family.json")), AlgebraError);
  EXPECT_THROW(load_algebra(data("bad_variable.json")), AlgebraError);
  EXPECT_THROW(load_algebra(data("bad_coeff_syntax.json")), FormatError);
  EXPECT_THROW(load_algebra(data("malformed.json")), FormatError);
  EXPECT_THROW(load_algebra(data("does_not_exist.json")), FormatError);
  try {
    load_algebra(data("indexed_target.json"));
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("index-law violation"), std::string::npos);
  }
}

TEST(AlgebraFile, SchemaErrors) {
  using nlohmann::json;
  EXPECT_THROW(algebra_from_json(json::array()), FormatError);
  EXPECT_THROW(algebra_from_json(json{{"name", "A"}, {"families", {"L"}}, {"rules", json::array()}}),
               FormatError);
  EXPECT_THROW(algebra_from_json(json{{"name", "A"}, {"modulus", "2"}, {"families", {"L"}},
                                      {"rules", json::array()}}),
               FormatError);
}

TEST(AlgebraFile, RoundTripAllCatalogs) {
  std::vector<Algebra> all{make_catalog(CatalogKind::Vir, 1)};
  for (int m = 1; m <= 4; ++m) {
    all.push_back(make_catalog(CatalogKind::CW, m));
    for (const char* b : {"symbolic", "-1", "0", "-3/2"})
      all.push_back(make_catalog(CatalogKind::CLW, m, BParameter::parse(b)));
  }
  for (const Algebra& a : all) {
    const nlohmann::json doc = algebra_to_json(a);
    EXPECT_EQ(algebra_from_json(doc), a) << doc.dump();
    EXPECT_EQ(algebra_from_json(nlohmann::json::parse(doc.dump())), a);
  }
}

TEST(MapFile, LoadInnerMap) {
  const auto vir = share(make_catalog(CatalogKind::Vir, 1));
  const BilinearMap phi = load_map(data("inner_vir.json"), vir);
  EXPECT_EQ(phi, make_family(vir, InnerFamily{}));
}

TEST(MapFile, RoundTrip) {
  const auto clw = share(make_catalog(CatalogKind::CLW, 3, BParameter::numeric(-1)));
  const BilinearMap phi = make_family(clw, ClwShiftFamily{2, Rational(3, 2), Rational(-1)});
  const nlohmann::json doc = map_to_json(phi);
  EXPECT_EQ(map_from_json(doc, clw), phi);
  EXPECT_EQ(map_from_json(nlohmann::json::parse(doc.dump()), clw), phi);
}

TEST(MapFile, Errors) {
  const auto vir = share(make_catalog(CatalogKind::Vir, 1));
  EXPECT_THROW(load_map(data("map_wrong_algebra.json"), vir), MapError);
  EXPECT_THROW(load_map(data("map_duplicate_entry.json"), vir), MapError);
  EXPECT_THROW(load_map(data("map_bad_generator.json"), vir), AlgebraError);
  EXPECT_THROW(load_map(data("malformed.json"), vir), FormatError);
}

TEST(Reports, ResidualCarriesCanonicalStrings) {
  const auto vir = share(make_catalog(CatalogKind::Vir, 1));
  const BilinearMap phi = load_map(data("broken_vir_map.json"), vir);
  const std::vector<Identity> tags{Identity::Def1a};
  const VerifyReport report = verify_map(phi, tags);
  ASSERT_FALSE(report.passed());
  const nlohmann::json doc = verify_report_json(*vir, report);
  EXPECT_EQ(doc["passed"], false);
  EXPECT_EQ(doc["failures"][0]["identity"], "def1a");
  EXPECT_EQ(doc["failures"][0]["args"], (nlohmann::json{"L:0", "L:0"}));
  EXPECT_EQ(doc["failures"][0]["value"][0]["gen"], "L:0");
  EXPECT_EQ(doc["failures"][0]["value"][0]["coeff"], "2");
}

TEST(Reports, AxiomReportShape) {
  const Algebra clw = make_catalog(CatalogKind::CLW, 2);
  const nlohmann::json doc = axiom_report_json(clw, check_axioms(clw));
  EXPECT_EQ(doc["passed"], true);
  EXPECT_EQ(doc["skew_checked"], 16);
  EXPECT_EQ(doc["jacobi_checked"], 64);
  EXPECT_EQ(doc["b"], "symbolic");
  EXPECT_TRUE(doc["failures"].empty());
}

}  // namespace
}  // namespace lca
